#pragma once

#include "eegscore/classifiers.hpp"
#include "eegscore/config.hpp"
#include "eegscore/errors.hpp"
#include "eegscore/evaluation.hpp"
#include "eegscore/gazetteer.hpp"
#include "eegscore/io.hpp"
#include "eegscore/lexicon.hpp"
#include "eegscore/model.hpp"
#include "eegscore/negation.hpp"
#include "eegscore/pipeline.hpp"
#include "eegscore/remote.hpp"
#include "eegscore/segmenter.hpp"
#include "eegscore/text.hpp"

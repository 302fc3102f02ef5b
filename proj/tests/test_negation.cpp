#include <gtest/gtest.h>

#include "eegscore/negation.hpp"
#include "eegscore/segmenter.hpp"
#include "support/generators.hpp"
#include "support/invariants.hpp"

namespace eegscore {
namespace {

// Negation of the last occurrence of `target` in `text`.
bool negated_in(const std::string& text, const std::string& target,
                const NegationDetector& d = default_negation()) {
  auto flag = testing::negation_of(text, target, d);
  EXPECT_TRUE(flag.has_value()) << target << " not in " << text;
  return flag.value_or(false);
}

TEST(DetectNegation, NoHistoryOf) { EXPECT_TRUE(negated_in("No history of epilepsy.", "epilepsy")); }

TEST(DetectNegation, NoTrigger) { EXPECT_FALSE(negated_in("History of epilepsy.", "epilepsy")); }

TEST(DetectNegation, ConjunctionBlocksScope) {
  EXPECT_FALSE(negated_in("No spikes, but epilepsy is suspected.", "epilepsy"));
  EXPECT_FALSE(negated_in("No spikes; epilepsy is suspected.", "epilepsy"));
  EXPECT_FALSE(negated_in("Not seen, however epilepsy is likely.", "epilepsy"));
}

TEST(DetectNegation, WindowIsSixTokens) {
  EXPECT_TRUE(negated_in("No one two three four five epilepsy.", "epilepsy"));
  EXPECT_FALSE(negated_in("No one two three four five six epilepsy.", "epilepsy"));
  EXPECT_TRUE(negated_in("Negative for any prior epilepsy.", "epilepsy"));
}

TEST(DetectNegation, TriggerAfterEntityDoesNotCount) {
  EXPECT_FALSE(negated_in("Epilepsy, not otherwise specified.", "Epilepsy"));
}

TEST(DetectNegation, OtherTriggers) {
  EXPECT_TRUE(negated_in("The patient denies seizures.", "seizures"));
  EXPECT_TRUE(negated_in("Free of seizures since May.", "seizures"));
  EXPECT_TRUE(negated_in("Background without abnormalities.", "abnormalities"));
  EXPECT_TRUE(negated_in("No abnormalities were identified.", "abnormalities"));
  EXPECT_FALSE(negated_in("Abnormal EEG due to generalized slowing.", "Abnormal"));
}

TEST(DetectNegation, ScopedToSentence) {
  EXPECT_FALSE(negated_in("No spikes. Epilepsy is known.", "Epilepsy"));
}

TEST(DetectNegation, ConfigurableTriggersAndWindow) {
  NegationConfig cfg;
  cfg.triggers = {"ruled out"};
  cfg.window = 2;
  NegationDetector d(cfg);
  EXPECT_TRUE(negated_in("Ruled out epilepsy.", "epilepsy", d));
  EXPECT_FALSE(negated_in("No epilepsy.", "epilepsy", d));
  EXPECT_FALSE(negated_in("Ruled out in the past epilepsy.", "epilepsy", d));
}

// Prepending whole sentences must not change an entity's negation flag.
TEST(NegationProperty, PrependInvariance) {
  testing::ReportGenerator gen(77);
  for (int i = 0; i < 200; ++i) {
    const auto& sentence = gen.pick(testing::prepend_targets());
    auto prefix = testing::negating_prefix(gen);
    bool base = negated_in(sentence, "epilepsy");
    EXPECT_EQ(negated_in(prefix + sentence, "epilepsy"), base) << prefix + sentence;
  }
}

}  // namespace
}  // namespace eegscore

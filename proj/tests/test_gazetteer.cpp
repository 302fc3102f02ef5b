#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>

#include "eegscore/gazetteer.hpp"
#include "eegscore/segmenter.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"

namespace eegscore {
namespace {

using K = CanonicalSection::Kind;

std::vector<Entity> tag_text(const std::string& text, const std::vector<Lexicon>& lex) {
  return gazetteer_tag(segment(Report("g", text)), lex);
}

TEST(GazetteerTag, EpilepsyInClinicalHistory) {
  auto lex = std::vector<Lexicon>{make_lexicon("epilepsy", EntityKind::Problem, {"epilepsy"})};
  auto ents = tag_text("CLINICAL HISTORY: History of epilepsy.", lex);
  ASSERT_EQ(ents.size(), 1u);
  EXPECT_EQ(ents[0].kind, EntityKind::Problem);
  EXPECT_EQ(ents[0].surface, "epilepsy");
  EXPECT_EQ(ents[0].span, (Span{29, 37}));
  EXPECT_EQ(ents[0].section, CanonicalSection(K::ClinicalHistory));
  EXPECT_FALSE(ents[0].negated);
  EXPECT_EQ(ents[0].source, EntitySource::Gazetteer);
}

TEST(GazetteerTag, NoMatches) {
  EXPECT_TRUE(tag_text("IMPRESSION: Routine study.", default_lexicons()).empty());
}

TEST(GazetteerTag, LongestMatchWins) {
  auto lex = std::vector<Lexicon>{
      make_lexicon("a", EntityKind::Problem, {"seizure"}),
      make_lexicon("b", EntityKind::Problem, {"seizure disorder"})};
  auto ents = tag_text("Known seizure disorder.", lex);
  ASSERT_EQ(ents.size(), 1u);
  EXPECT_EQ(ents[0].surface, "seizure disorder");
}

TEST(GazetteerTag, WordBoundariesAndCase) {
  auto lex = std::vector<Lexicon>{make_lexicon("n", EntityKind::Problem, {"normal", "tonic-clonic"})};
  auto ents = tag_text("ABNORMAL, Normal, normality, Tonic clonic, tonic-Clonic, tonic. clonic", lex);
  std::vector<std::string> surfaces;
  for (auto& e : ents) surfaces.push_back(e.surface);
  EXPECT_EQ(surfaces, (std::vector<std::string>{"Normal", "Tonic clonic", "tonic-Clonic"}));
}

TEST(GazetteerTag, NegationAndPreamble) {
  auto ents = tag_text("No epilepsy here.\nIMPRESSION: Normal EEG.", default_lexicons());
  ASSERT_EQ(ents.size(), 3u);
  EXPECT_EQ(ents[0].surface, "epilepsy");
  EXPECT_TRUE(ents[0].negated);
  EXPECT_EQ(ents[0].section, CanonicalSection::preamble());
  EXPECT_EQ(ents[1].surface, "Normal");
  EXPECT_EQ(ents[2].kind, EntityKind::Test);
}

TEST(GazetteerTag, OffsetsAreCharacterBased) {
  auto ents = tag_text("Caf\xC3\xA9 \xE2\x80\x94 epilepsy.", default_lexicons());
  ASSERT_EQ(ents.size(), 1u);
  EXPECT_EQ(ents[0].span, (Span{7, 15}));
}

TEST(ResolveOverlaps, LongestThenLeftmost) {
  std::vector<Candidate> c{{{0, 5}, EntityKind::Problem, "x"},
                           {{3, 8}, EntityKind::Problem, "x"},
                           {{2, 10}, EntityKind::Test, "y"},
                           {{10, 12}, EntityKind::Problem, "x"},
                           {{11, 13}, EntityKind::Problem, "x"}};
  auto kept = resolve_overlaps(c);
  ASSERT_EQ(kept.size(), 2u);
  EXPECT_EQ(kept[0].span, (Span{2, 10}));
  EXPECT_EQ(kept[1].span, (Span{10, 12}));
}

// Output must not depend on lexicon order, and entities never overlap.
TEST(GazetteerProperty, OrderIndependentAndDisjoint) {
  testing::ReportGenerator gen(5);
  auto lex = default_lexicons();
  lex.push_back(make_lexicon("extra", EntityKind::Treatment, {"complex", "partial seizure", "left temporal"}));
  for (int i = 0; i < 100; ++i) {
    auto seg = segment(Report("p", gen.report()));
    auto base = gazetteer_tag(seg, lex);
    for (std::size_t k = 1; k < base.size(); ++k) EXPECT_LE(base[k - 1].span.end, base[k].span.start);
    auto shuffled = lex;
    std::shuffle(shuffled.begin(), shuffled.end(), gen.rng());
    EXPECT_EQ(gazetteer_tag(seg, shuffled), base);
    for (const auto& e : base) EXPECT_EQ(seg.report.slice(e.span), e.surface);
  }
}

TEST(Lexicon, ParsesFileFormat) {
  auto lex = parse_lexicon("# comment\nkind: MedicationName\n\n  Keppra \nvalproic   ACID\n", "meds");
  EXPECT_EQ(lex.name, "meds");
  EXPECT_EQ(lex.kind, EntityKind::MedicationName);
  EXPECT_EQ(lex.terms, (std::set<std::string>{"keppra", "valproic acid"}));
}

TEST(Lexicon, RejectsBadFiles) {
  EXPECT_THROW(parse_lexicon("epilepsy\n", "x"), ParseError);
  EXPECT_THROW(parse_lexicon("kind: Banana\nx\n", "x"), ParseError);
  EXPECT_THROW(parse_lexicon("kind: Problem\n", "x"), ParseError);
  EXPECT_THROW(parse_lexicon("kind: Problem\none two three four five six seven\n", "x"), ParseError);
  EXPECT_THROW(parse_lexicon("kind: Problem\n---\n", "x"), ParseError);
}

TEST(Lexicon, ShippedFilesMatchBuiltins) {
  auto builtins = default_lexicons();
  std::size_t files = 0;
  for (const auto& entry : std::filesystem::directory_iterator(testing::data_dir() / "lexicons")) {
    if (entry.path().extension() != ".lex") continue;
    ++files;
    auto lex = load_lexicon(entry.path());
    const Lexicon* b = find_lexicon(builtins, lex.name);
    ASSERT_NE(b, nullptr) << lex.name;
    EXPECT_EQ(lex, *b);
  }
  EXPECT_EQ(files, builtins.size());
}

}  // namespace
}  // namespace eegscore

#include "xmlir/assessments.hpp"

#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace xmlir;
using xmlir::testing::example_assessment_xml;

namespace {

const std::string kPrefix = "/article[1]/bdy[1]";

AssessmentSet example_set() {
    auto file = parse_assessments(example_assessment_xml());
    EXPECT_TRUE(file.diagnostics.empty());
    EXPECT_EQ(file.sets.size(), 1u);
    return file.sets.at(0);
}

std::set<std::string> strings(const ElementSet& set) {
    std::set<std::string> out;
    for (const auto& ref : set) {
        out.insert(ref.path.str());
    }
    return out;
}

AssessmentEntry entry(const std::string& doc, const std::string& path, int e = 3, int s = 3) {
    return AssessmentEntry{DocId{doc}, ElementPath::parse(path), e, s};
}

}  // namespace

TEST(AssessmentParseTest, ExampleExtract) {
    auto set = example_set();
    EXPECT_EQ(set.topic_id, 117);
    EXPECT_EQ(set.entries.size(), 20u);
    EXPECT_EQ(set.entries[0].doc.value, "ic/1999/w4095");
}

TEST(AssessmentParseTest, BadEntriesAreReportedAndDropped) {
    auto file = parse_assessments(R"(<all>
<assessments topic="3"><file file="d">
  <path E="3" S="3" path="/a[1]"/>
  <path E="4" S="3" path="/a[1]/b[1]"/>
  <path E="3" S="3" path="a"/>
  <path E="3" S="3" path="/a[1]"/>
  <path E="x" S="1" path="/a[1]/c[1]"/>
</file></assessments>
<assessments topic="4"><file file="e"><path E="1" S="1" path="/a[1]"/></file></assessments>
</all>)");
    ASSERT_EQ(file.sets.size(), 2u);
    EXPECT_EQ(file.sets[0].entries.size(), 1u);
    EXPECT_EQ(file.diagnostics.size(), 4u);
    EXPECT_EQ(file.sets[1].topic_id, 4);
    EXPECT_THROW(parse_assessments("<assessments topic=\"abc\"/>"), ParseError);
    EXPECT_THROW(parse_assessments("not xml"), ParseError);
}

TEST(AssessmentParseTest, LoadMergesTopicsAcrossFiles) {
    xmlir::testing::TempDir dir;
    dir.write("a.xml", "<assessments topic=\"5\"><file file=\"d1\"><path E=\"3\" S=\"3\" path=\"/a[1]\"/></file></assessments>");
    dir.write("b.xml", "<assessments topic=\"5\"><file file=\"d2\"><path E=\"3\" S=\"3\" path=\"/a[1]\"/></file></assessments>");
    auto file = load_assessments(dir.path().string());
    ASSERT_EQ(file.sets.size(), 1u);
    EXPECT_EQ(file.sets[0].entries.size(), 2u);
}

TEST(HighlyRelevantTest, ExampleHasFifteen) {
    auto set = example_set();
    auto hr = highly_relevant(set);
    EXPECT_EQ(hr.size(), 15u);
    for (const auto& ref : hr) {
        EXPECT_EQ(ref.path.str().rfind("/article[1]/bm[1]", 0), std::string::npos) << ref.path.str();
    }
    EXPECT_TRUE(highly_relevant(AssessmentSet{}).empty());
}

TEST(DeriveViewTest, ExampleGeneralAndSpecific) {
    auto set = example_set();
    EXPECT_EQ(strings(derive_view(set, RelevanceCase::Original)), strings(highly_relevant(set)));
    EXPECT_EQ(strings(derive_view(set, RelevanceCase::General)), (std::set<std::string>{"/article[1]"}));
    EXPECT_EQ(strings(derive_view(set, RelevanceCase::Specific)),
              (std::set<std::string>{kPrefix + "/sec[2]/ip1[1]", kPrefix + "/sec[2]/ss1[1]/ip1[1]",
                                     kPrefix + "/sec[2]/ss1[1]/p[1]", kPrefix + "/sec[2]/ss1[2]/ip1[1]",
                                     kPrefix + "/sec[2]/ss1[2]/p[1]", kPrefix + "/sec[4]/ip1[1]",
                                     kPrefix + "/sec[4]/p[1]", kPrefix + "/sec[4]/p[2]", kPrefix + "/sec[4]/p[3]"}));
}

TEST(DeriveViewTest, SingletonIsGeneralAndSpecific) {
    AssessmentSet set{1, {entry("d", "/article[1]/bdy[1]/sec[3]"), entry("d", "/article[1]", 2, 2)}};
    auto general = derive_view(set, RelevanceCase::General);
    EXPECT_EQ(general, derive_view(set, RelevanceCase::Specific));
    EXPECT_EQ(strings(general), (std::set<std::string>{"/article[1]/bdy[1]/sec[3]"}));
}

TEST(DeriveViewTest, DocumentsAreIndependent) {
    AssessmentSet set{1, {entry("d1", "/article[1]"), entry("d2", "/article[1]/bdy[1]")}};
    EXPECT_EQ(derive_view(set, RelevanceCase::General).size(), 2u);
    EXPECT_EQ(derive_view(set, RelevanceCase::Specific).size(), 2u);
}

TEST(RelevanceCaseTest, NamesRoundTrip) {
    for (auto c : {RelevanceCase::Original, RelevanceCase::General, RelevanceCase::Specific}) {
        EXPECT_EQ(parse_relevance_case(to_string(c)), c);
    }
    EXPECT_THROW(parse_relevance_case("strict"), InvalidArgument);
}

TEST(ElementDistributionTest, ExampleAndEmpty) {
    EXPECT_EQ(element_distribution({example_set()}, RelevanceCase::General),
              (std::map<std::string, std::size_t>{{"article", 1}}));
    EXPECT_EQ(element_distribution({example_set()}, RelevanceCase::Specific),
              (std::map<std::string, std::size_t>{{"ip1", 4}, {"p", 5}}));
    EXPECT_TRUE(element_distribution({}, RelevanceCase::Original).empty());
}

TEST(ElementDistributionTest, TwoTopicsMatchDirectTally) {
    std::mt19937 rng(77);
    const std::vector<std::string> tags{"sec", "p", "ip1", "ss1"};
    std::vector<AssessmentSet> sets;
    std::map<std::string, std::size_t> tally;
    for (TopicId topic : {1, 2}) {
        AssessmentSet set{topic, {}};
        for (int d = 0; d < 10; ++d) {
            // Flat, unrelated paths keep every highly relevant element in all views.
            for (int k = 1; k <= 3; ++k) {
                const auto& tag = tags[rng() % tags.size()];
                bool hr = rng() % 2 == 0;
                set.entries.push_back(entry("d" + std::to_string(d), "/article[1]/" + tag + "[" + std::to_string(k) + "]",
                                            3, hr ? 3 : 1));
                if (hr) {
                    ++tally[tag];
                }
            }
        }
        sets.push_back(set);
    }
    for (auto c : {RelevanceCase::Original, RelevanceCase::General, RelevanceCase::Specific}) {
        EXPECT_EQ(element_distribution(sets, c), tally);
    }
}

TEST(CategorizeTest, Anchors) {
    EXPECT_EQ(categorize({20, 5}), TopicCategory::Broad);
    EXPECT_EQ(categorize({4, 4}), TopicCategory::Neutral);
    EXPECT_EQ(categorize({2, 7}), TopicCategory::Narrow);
    EXPECT_EQ(categorize_topic(example_set()), TopicCategory::Broad);
}

TEST(CategorizeTest, ExhaustiveSweepMatchesComparison) {
    for (std::size_t a = 0; a <= 10; ++a) {
        for (std::size_t b = 0; b <= 10; ++b) {
            auto expected = a > b ? TopicCategory::Broad : (a < b ? TopicCategory::Narrow : TopicCategory::Neutral);
            EXPECT_EQ(categorize({a, b}), expected) << a << "," << b;
        }
    }
}

TEST(CategorizeTest, CountsFromGeneralView) {
    AssessmentSet set{9, {}};
    for (int d = 0; d < 20; ++d) {
        set.entries.push_back(entry("r" + std::to_string(d), "/article[1]"));
        set.entries.push_back(entry("r" + std::to_string(d), "/article[1]/bdy[1]"));
    }
    for (int d = 0; d < 5; ++d) {
        set.entries.push_back(entry("s" + std::to_string(d), "/article[1]/bdy[1]/sec[1]"));
    }
    auto counts = category_counts(set);
    EXPECT_EQ(counts.root_elements, 20u);
    EXPECT_EQ(counts.other_elements, 5u);
    EXPECT_EQ(categorize_topic(set), TopicCategory::Broad);
    EXPECT_THROW(category_counts(AssessmentSet{3, {entry("d", "/a[1]", 2, 3)}}), InvalidArgument);
}

TEST(UnresolvedAssessmentsTest, FlagsMissingPaths) {
    std::vector<DocumentTree> docs;
    docs.push_back(DocumentTree::parse(DocId{"d"}, "<article><bdy/></article>"));
    Corpus corpus(std::move(docs));
    AssessmentSet set{1, {entry("d", "/article[1]/bdy[1]"), entry("d", "/article[1]/bm[1]"), entry("x", "/article[1]")}};
    EXPECT_EQ(unresolved_assessments(set, corpus).size(), 2u);
}

// Coverage, antichain, intersection and size laws on random judgment trees,
// each checked by brute force over the highly relevant set.
TEST(DeriveViewProperties, RandomJudgmentTrees) {
    std::mt19937 rng(4242);
    for (int iter = 0; iter < 1000; ++iter) {
        AssessmentSet set{1, {}};
        for (int d = 0; d < 2; ++d) {
            auto tree = DocumentTree::parse(DocId{"d"}, xmlir::testing::random_document_xml(rng));
            for (NodeId id = 0; id < tree.node_count(); ++id) {
                bool hr = rng() % 2 == 0;
                set.entries.push_back(AssessmentEntry{DocId{"d" + std::to_string(d)}, tree.path_of(id), hr ? 3 : int(rng() % 4),
                                                      hr ? 3 : int(rng() % 3)});
            }
        }
        auto original = highly_relevant(set);
        auto general = derive_view(set, RelevanceCase::General);
        auto specific = derive_view(set, RelevanceCase::Specific);
        auto related = [](const ElementRef& a, const ElementRef& b) {
            return a.doc == b.doc && a.path.is_ancestor_of(b.path);
        };
        for (const auto& hr : original) {
            ASSERT_TRUE(std::any_of(general.begin(), general.end(), [&](const ElementRef& g) {
                return g == hr || related(g, hr);
            }));
            ASSERT_TRUE(std::any_of(specific.begin(), specific.end(), [&](const ElementRef& s) {
                return s == hr || related(hr, s);
            }));
            bool has_ancestor = std::any_of(original.begin(), original.end(), [&](const ElementRef& o) { return related(o, hr); });
            bool has_descendant = std::any_of(original.begin(), original.end(), [&](const ElementRef& o) { return related(hr, o); });
            ASSERT_EQ(general.count(hr) && specific.count(hr), !has_ancestor && !has_descendant);
        }
        for (const auto* view : {&general, &specific}) {
            for (const auto& a : *view) {
                ASSERT_TRUE(original.count(a));
                for (const auto& b : *view) {
                    ASSERT_FALSE(related(a, b));
                }
            }
        }
        ASSERT_LE(general.size(), original.size());
        ASSERT_LE(specific.size(), original.size());
    }
}

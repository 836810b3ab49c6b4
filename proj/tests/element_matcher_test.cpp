#include "xmlir/element_matcher.hpp"

#include "fixtures.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace xmlir;

namespace {

DocumentTree parse(const std::string& xml, const std::string& id = "d") { return DocumentTree::parse(DocId{id}, xml); }

std::vector<std::string> path_strings(const std::vector<MatchingElement>& matches) {
    std::vector<std::string> out;
    for (const auto& m : matches) {
        out.push_back(m.path.str());
    }
    return out;
}

const char* kDoc =
    "<article><fm><atl>A title</atl></fm><bdy>"
    "<sec><p>alpha one</p><p>beta two</p></sec>"
    "<sec><st>heading</st><p>Patricia is here</p></sec>"
    "</bdy></article>";

}  // namespace

TEST(ElementQueryTest, DeduplicatesAndRejectsEmpty) {
    ElementQuery q({"b", "a", "b"}, MatchMode::And);
    EXPECT_EQ(q.terms(), (std::vector<std::string>{"a", "b"}));
    EXPECT_THROW(ElementQuery({}, MatchMode::Or), InvalidArgument);
}

TEST(MatchElementsTest, SingleOccurrenceGivesDeepestContainer) {
    auto tree = parse(kDoc);
    auto result = match_elements(tree, ElementQuery({"patricia"}, MatchMode::Or));
    EXPECT_EQ(path_strings(result), (std::vector<std::string>{"/article[1]/bdy[1]/sec[2]/p[1]"}));
    EXPECT_EQ(result[0].node, *tree.resolve(result[0].path));
}

TEST(MatchElementsTest, AndSpreadAcrossChildrenGivesCommonSection) {
    auto tree = parse(kDoc);
    auto result = match_elements(tree, ElementQuery({"alpha", "beta"}, MatchMode::And));
    EXPECT_EQ(path_strings(result), (std::vector<std::string>{"/article[1]/bdy[1]/sec[1]"}));
    auto oracle = xmlir::testing::oracle_most_specific(tree, {"alpha", "beta"}, MatchMode::And);
    ASSERT_EQ(oracle.size(), 1u);
    EXPECT_EQ(oracle[0], result[0].path);
}

TEST(MatchElementsTest, OrListsEveryLeafInDocumentOrder) {
    auto tree = parse(kDoc);
    auto result = match_elements(tree, ElementQuery({"alpha", "beta", "patricia"}, MatchMode::Or));
    EXPECT_EQ(path_strings(result),
              (std::vector<std::string>{"/article[1]/bdy[1]/sec[1]/p[1]", "/article[1]/bdy[1]/sec[1]/p[2]",
                                        "/article[1]/bdy[1]/sec[2]/p[1]"}));
}

TEST(MatchElementsTest, AbsentTermGivesNothing) {
    auto tree = parse(kDoc);
    EXPECT_TRUE(match_elements(tree, ElementQuery({"absent"}, MatchMode::Or)).empty());
    EXPECT_TRUE(match_elements(tree, ElementQuery({"alpha", "absent"}, MatchMode::And)).empty());
}

TEST(MatchElementsTest, EmptyElementsNeverMatch) {
    auto tree = parse("<a><b/><c>x</c></a>");
    EXPECT_EQ(path_strings(match_elements(tree, ElementQuery({"x"}, MatchMode::Or))),
              (std::vector<std::string>{"/a[1]/c[1]"}));
}

TEST(CollectionMatchTest, DocumentOrderRegardlessOfQuality) {
    std::vector<DocumentTree> docs;
    docs.push_back(parse("<a><p>x</p></a>", "d1"));
    docs.push_back(parse("<a><p>x x x y</p></a>", "d2"));
    docs.push_back(parse("<a><p>z</p></a>", "d3"));
    Corpus corpus(std::move(docs));
    auto result = collection_match(corpus, ElementQuery({"x"}, MatchMode::Or));
    ASSERT_EQ(result.size(), 2u);
    EXPECT_EQ(result[0].doc.value, "d1");
    EXPECT_EQ(result[1].doc.value, "d2");
    EXPECT_EQ(result[1].ordinal, 1u);

    auto only_second = collection_match(corpus, ElementQuery({"y"}, MatchMode::Or));
    ASSERT_EQ(only_second.size(), 1u);
    EXPECT_EQ(only_second[0].doc.value, "d2");

    EXPECT_TRUE(collection_match(Corpus{}, ElementQuery({"x"}, MatchMode::Or)).empty());
}

// Most-specific, antichain, AND-within-OR and document-order laws against
// a brute-force scan of every element.
TEST(MatchElementsProperties, RandomTreesAgreeWithOracle) {
    std::mt19937 rng(99);
    const std::vector<std::string> vocab{"w0", "w1", "w2", "w3", "w4", "w5"};
    for (int iter = 0; iter < 500; ++iter) {
        auto tree = parse(xmlir::testing::random_document_xml(rng));
        std::vector<std::string> terms;
        for (const auto& w : vocab) {
            if (rng() % 3 == 0) {
                terms.push_back(w);
            }
        }
        if (terms.empty()) {
            terms.push_back(vocab[rng() % vocab.size()]);
        }
        for (MatchMode mode : {MatchMode::And, MatchMode::Or}) {
            auto result = match_elements(tree, ElementQuery(terms, mode));
            std::vector<ElementPath> paths;
            for (const auto& m : result) {
                paths.push_back(m.path);
            }
            ASSERT_EQ(paths, xmlir::testing::oracle_most_specific(tree, terms, mode));
            for (std::size_t i = 0; i < result.size(); ++i) {
                for (std::size_t j = 0; j < result.size(); ++j) {
                    ASSERT_FALSE(i != j && paths[i].is_ancestor_of(paths[j]));
                }
                if (i > 0) {
                    ASSERT_LT(result[i - 1].node, result[i].node);
                }
            }
        }
        auto or_satisfying = [&](NodeId id) {
            auto counts = tree.subtree_terms(id);
            return std::any_of(terms.begin(), terms.end(), [&](const std::string& t) { return counts.count(t) > 0; });
        };
        for (const auto& m : match_elements(tree, ElementQuery(terms, MatchMode::And))) {
            ASSERT_TRUE(or_satisfying(m.node));
        }
    }
}

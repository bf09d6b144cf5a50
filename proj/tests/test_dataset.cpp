#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cogmap/error.hpp"
#include "cogmap/text_io.hpp"
#include "cogmap/training_set.hpp"
#include "test_util.hpp"

namespace cogmap {
namespace {

std::string error_of(auto&& f) {
  try {
    f();
  } catch (const ValidationError& e) {
    return e.what();
  }
  return "";
}

TEST(Embeddings, ParsesMinimalFile) {
  const auto t = parse_embeddings("2 3\napple 1 0 0\ncar 0 1 0");
  EXPECT_EQ(t.dimension(), 3u);
  EXPECT_EQ(t.size(), 2u);
  EXPECT_EQ(t.at("car")[1], 1.0);
  EXPECT_EQ(t.words(), (std::vector<std::string>{"apple", "car"}));
}

TEST(Embeddings, WrongComponentCountReportsLine) {
  const auto msg = error_of([] { parse_embeddings("1 2\napple 1 0 0"); });
  EXPECT_NE(msg.find("line 2"), std::string::npos) << msg;
  EXPECT_NE(msg.find("component count"), std::string::npos) << msg;
}

TEST(Embeddings, ZeroVectorRejected) {
  const auto msg = error_of([] { parse_embeddings("1 3\napple 0 0 0"); });
  EXPECT_NE(msg.find("zero vector"), std::string::npos) << msg;
  EXPECT_NE(msg.find("line 2"), std::string::npos) << msg;
}

TEST(Embeddings, OtherMalformedInputs) {
  EXPECT_NE(error_of([] { parse_embeddings("two 3\na 1 2 3"); }).find("line 1"), std::string::npos);
  EXPECT_NE(error_of([] { parse_embeddings("2 1\na 1\na 2"); }).find("duplicate"), std::string::npos);
  EXPECT_NE(error_of([] { parse_embeddings("1 2\na 1 nan"); }).find("line 2"), std::string::npos);
  EXPECT_NE(error_of([] { parse_embeddings("1 2\na 1 inf"); }).find("non-finite"), std::string::npos);
  EXPECT_NE(error_of([] { parse_embeddings("1 2\na 1 x"); }).find("unparsable"), std::string::npos);
  EXPECT_NE(error_of([] { parse_embeddings("3 2\na 1 2"); }).find("declares 3"), std::string::npos);
  EXPECT_THROW(load_embeddings("/nonexistent/vectors.txt"), ValidationError);
}

TEST(Embeddings, CaseSensitiveKeys) {
  const auto t = parse_embeddings("2 1\nDog 1\ndog 2");
  EXPECT_EQ(t.at("Dog")[0], 1.0);
  EXPECT_EQ(t.at("dog")[0], 2.0);
  EXPECT_FALSE(t.contains("DOG"));
}

TEST(Embeddings, RoundTripIsBitExact) {
  Rng rng(7);
  EmbeddingTable t(5);
  for (int w = 0; w < 20; ++w) t.add("w" + std::to_string(w), testing::random_vector(rng, 5, std::pow(10.0, w % 7 - 3)));
  const auto back = parse_embeddings(format_embeddings(t));
  ASSERT_EQ(back.words(), t.words());
  for (const auto& w : t.words()) {
    auto a = t.at(w);
    auto b = back.at(w);
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i], b[i]);
  }
}

TEST(Lexicon, ShippedLexiconShape) {
  const auto lex = load_lexicon(std::string(COGMAP_DATA_DIR) + "/lexicon.csv");
  EXPECT_EQ(lex.state_count(), 60u);
  EXPECT_EQ(lex.validation.size(), 30u);
  EXPECT_EQ(lex.categories, (std::vector<std::string>{"animal", "vehicle", "furniture"}));
  for (const auto& c : lex.categories) {
    auto count = [&](const std::vector<LexiconEntry>& v) {
      return std::count_if(v.begin(), v.end(), [&](const LexiconEntry& e) { return e.category == c; });
    };
    EXPECT_EQ(count(lex.training), 20);
    EXPECT_EQ(count(lex.validation), 10);
  }
}

TEST(Lexicon, SingleRecordAndErrors) {
  const auto lex = parse_lexicon("word,category,split\ndog,animal,train\n");
  EXPECT_EQ(lex.state_count(), 1u);
  EXPECT_NE(error_of([] { parse_lexicon("word,category,split\ndog,animal,train\ndog,animal,validation\n"); })
                .find("duplicate word 'dog'"),
            std::string::npos);
  EXPECT_NE(error_of([] { parse_lexicon("word,category,split\ndog,animal,test\n"); }).find("unknown split"),
            std::string::npos);
  EXPECT_NE(error_of([] { parse_lexicon("word,category,split\ndog,,train\n"); }).find("empty category"),
            std::string::npos);
  EXPECT_THROW(parse_lexicon("dog,animal,train\n"), ValidationError);
}

TEST(Lexicon, TrainingOrderIsFileOrder) {
  const auto lex = parse_lexicon("word,category,split\nb,x,train\nz,y,validation\na,y,train\n");
  EXPECT_EQ(lex.training_words(), (std::vector<std::string>{"b", "a"}));
  EXPECT_EQ(lex.categories, (std::vector<std::string>{"x", "y"}));
}

TEST(Examples, ShippedTrainSplitIsDistributions) {
  const auto table = load_embeddings(std::string(COGMAP_DATA_DIR) + "/embeddings_surrogate_300d.txt");
  const auto lex = load_lexicon(std::string(COGMAP_DATA_DIR) + "/lexicon.csv");
  const auto sr = successor_matrix(build_transition_matrix(table, lex), 1.0, 5);
  const auto ex = build_examples(table, lex, sr, Split::Train);
  ASSERT_EQ(ex.size(), 60u);
  for (std::size_t i = 0; i < ex.size(); ++i) {
    EXPECT_EQ(ex.words[i], lex.training[i].word);
    EXPECT_EQ(ex.labels[i], lex.training[i].category);
    double sum = 0.0;
    for (double v : ex.targets[i]) {
      EXPECT_GE(v, 0.0);
      sum += v;
    }
    EXPECT_NEAR(sum, 1.0, 1e-9);
  }
  const auto val = build_examples(table, lex, sr, Split::Validation);
  EXPECT_EQ(val.size(), 30u);
  for (const auto& t : val.targets) EXPECT_NEAR(std::accumulate(t.begin(), t.end(), 0.0), 1.0, 1e-9);
}

TEST(Examples, IdentitySuccessorGivesOneHot) {
  const auto table = parse_embeddings("3 2\na 1 0\nb 0 1\nc 1 1");
  const auto lex = parse_lexicon("word,category,split\na,x,train\nb,y,train\nc,x,train\n");
  const auto sr = successor_matrix(build_transition_matrix(table, lex), 0.0, 5);
  const auto ex = build_examples(table, lex, sr, Split::Train);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(ex.targets[i][j], i == j ? 1.0 : 0.0);
}

TEST(Examples, TwoStateHandBuiltSuccessor) {
  // T = [[0.2, 0.8], [0.8, 0.2]], gamma 1, horizon 1: M = I + T = [[1.2, 0.8], [0.8, 1.2]],
  // rows normalized by 2 -> (0.6, 0.4) / (0.4, 0.6).
  TransitionMatrix t{Matrix(2, 2), {"a", "b"}};
  t.values(0, 0) = 0.2;
  t.values(0, 1) = 0.8;
  t.values(1, 0) = 0.8;
  t.values(1, 1) = 0.2;
  const auto sr = successor_matrix(t, 1.0, 1);
  const auto table = parse_embeddings("3 2\na 1 0\nb 0 1\nv 0.1 1");
  const auto lex = parse_lexicon("word,category,split\na,x,train\nb,y,train\nv,y,validation\n");
  const auto ex = build_examples(table, lex, sr, Split::Train);
  EXPECT_NEAR(ex.targets[0][0], 0.6, 1e-12);
  EXPECT_NEAR(ex.targets[0][1], 0.4, 1e-12);
  EXPECT_NEAR(ex.targets[1][0], 0.4, 1e-12);
  EXPECT_NEAR(ex.targets[1][1], 0.6, 1e-12);
  // Validation word "v" is closest to "b".
  const auto val = build_examples(table, lex, sr, Split::Validation);
  EXPECT_EQ(val.targets[0], ex.targets[1]);
}

TEST(Examples, MissingWordIsNamed) {
  const auto table = parse_embeddings("1 2\na 1 0");
  const auto lex = parse_lexicon("word,category,split\na,x,train\nzebra,x,validation\n");
  const auto sr = successor_matrix(build_transition_matrix(table, lex), 0.5, 2);
  EXPECT_NE(error_of([&] { build_examples(table, lex, sr, Split::Validation); }).find("zebra"), std::string::npos);
}

}  // namespace
}  // namespace cogmap

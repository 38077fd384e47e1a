#include <gtest/gtest.h>

#include <sstream>

#include "support/generators.hpp"
#include "support/tempdir.hpp"
#include "syncov/error.hpp"
#include "syncov/io/binary.hpp"
#include "syncov/io/cache.hpp"
#include "syncov/polynomial.hpp"

namespace syncov::io {
namespace {

CorpusCache random_cache(std::uint64_t seed) {
  testing::Rng rng(seed);
  CorpusCache c;
  c.vocab = testing::make_vocab(5);
  for (int i = 0; i < 30; ++i) {
    c.corpus.push_back(testing::make_record(i, testing::random_tokens(rng, 6, 20),
                                            testing::random_tree(rng, 6, 5), c.vocab));
  }
  for (int i = 0; i < 4; ++i) {
    c.tests.push_back(testing::make_record(i, testing::random_tokens(rng, 4, 20),
                                           testing::random_tree(rng, 4, 5), c.vocab));
  }
  return c;
}

TEST(BinaryIo, RoundTripAndShortRead) {
  std::stringstream buf;
  BinaryWriter w(buf);
  w.header("TESTMAGC", 3);
  w.u32(7);
  w.i64(-5);
  w.f64(0.1);
  w.str("héllo");
  BinaryReader r(buf, "buf");
  r.expect_header("TESTMAGC", 3);
  EXPECT_EQ(r.u32(), 7u);
  EXPECT_EQ(r.i64(), -5);
  EXPECT_EQ(r.f64(), 0.1);
  EXPECT_EQ(r.str(), "héllo");
  EXPECT_THROW(r.u8(), CacheError);
  std::stringstream other;
  BinaryWriter(other).header("OTHERMAG", 3);
  EXPECT_THROW(BinaryReader(other, "x").expect_header("TESTMAGC", 3), CacheError);
}

TEST(CorpusCache, RoundTrip) {
  const auto cache = random_cache(1);
  std::stringstream buf;
  save_corpus_cache(buf, cache);
  const auto loaded = load_corpus_cache(buf);
  EXPECT_EQ(loaded.vocab, cache.vocab);
  ASSERT_EQ(loaded.corpus.size(), cache.corpus.size());
  ASSERT_EQ(loaded.tests.size(), cache.tests.size());
  for (std::size_t i = 0; i < cache.corpus.size(); ++i) {
    const auto& a = loaded.corpus[i];
    const auto& b = cache.corpus[i];
    EXPECT_EQ(a.id, b.id);
    EXPECT_EQ(a.source, b.source);
    EXPECT_EQ(a.target, b.target);
    EXPECT_EQ(a.source_tokens, b.source_tokens);
    EXPECT_EQ(a.source_bag, b.source_bag);
    EXPECT_EQ(a.tree, b.tree);
    EXPECT_FALSE(a.polynomial.has_value());
  }
}

TEST(CorpusCache, TruncatedFileIsCacheError) {
  std::stringstream buf;
  save_corpus_cache(buf, random_cache(2));
  const std::string bytes = buf.str();
  std::stringstream cut(bytes.substr(0, bytes.size() / 2));
  EXPECT_THROW(load_corpus_cache(cut), CacheError);
}

TEST(PolynomialCache, AttachRestoresPolynomials) {
  auto cache = random_cache(3);
  std::vector<const ExampleRecord*> src;
  for (const auto& r : cache.corpus) src.push_back(&r);
  std::stringstream buf;
  save_polynomial_cache(buf, cache.vocab, src);

  auto copy = cache.corpus;
  std::vector<ExampleRecord*> dst;
  for (auto& r : copy) {
    r.polynomial.reset();
    dst.push_back(&r);
  }
  attach_polynomials(buf, cache.vocab, dst);
  for (std::size_t i = 0; i < copy.size(); ++i) EXPECT_EQ(copy[i].polynomial, cache.corpus[i].polynomial);
}

TEST(PolynomialCache, VocabularyMismatchAndMissingId) {
  auto cache = random_cache(4);
  std::vector<const ExampleRecord*> src{&cache.corpus[0]};
  std::stringstream buf;
  save_polynomial_cache(buf, cache.vocab, src);
  const std::string bytes = buf.str();

  std::vector<ExampleRecord*> one{&cache.corpus[0]};
  std::stringstream a(bytes);
  EXPECT_THROW(attach_polynomials(a, testing::make_vocab(4), one), CacheError);
  std::vector<ExampleRecord*> other{&cache.corpus[1]};
  std::stringstream b(bytes);
  EXPECT_THROW(attach_polynomials(b, cache.vocab, other), CacheError);
}

TEST(WriteAtomically, FailedWriterLeavesNoFile) {
  testing::TempDir dir;
  const auto target = dir / "out.bin";
  EXPECT_THROW(write_atomically(target, [](std::ostream&) { throw std::runtime_error("boom"); }),
               std::runtime_error);
  EXPECT_FALSE(std::filesystem::exists(target));
  write_atomically(target, [](std::ostream& out) { out << "ok"; });
  EXPECT_EQ(testing::read_file(target), "ok");
  EXPECT_EQ(std::distance(std::filesystem::directory_iterator(dir.path()), {}), 1);
}

}  // namespace
}  // namespace syncov::io

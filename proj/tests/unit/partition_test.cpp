#include <gtest/gtest.h>

#include <sstream>

#include "fixtures.hpp"
#include "signedmeso/error.hpp"
#include "signedmeso/partition.hpp"

using namespace signedmeso;

namespace {

Partition import_text(const std::string& text, const SignedGraph& g) {
  std::istringstream in(text);
  return import_partition(in, g);
}

}  // namespace

TEST(Partition, RejectsGapsInLabels) {
  EXPECT_THROW(Partition({0, 2}), ValidationError);
  EXPECT_THROW(Partition({1, 1}), ValidationError);
  EXPECT_NO_THROW(Partition({1, 0}));
}

TEST(Partition, CompactKeepsFirstOccurrenceOrder) {
  const Partition p = Partition::compact(std::vector<std::int64_t>{7, 3, 7, 9});
  EXPECT_EQ(std::vector<BlockId>(p.assignment().begin(), p.assignment().end()), (std::vector<BlockId>{0, 1, 0, 2}));
  EXPECT_EQ(p.block_count(), 3u);
  EXPECT_EQ(std::vector<std::size_t>(p.block_sizes().begin(), p.block_sizes().end()),
            (std::vector<std::size_t>{2, 1, 1}));
  EXPECT_EQ(Partition({1, 0, 1}).canonical(), Partition({0, 1, 0}));
}

TEST(ImportPartition, CompactsLabels) {
  const SignedGraph g(3, {});
  const Partition p = import_text("0,a\n1,a\n2,b\n", g);
  EXPECT_EQ(p, Partition({0, 0, 1}));
  EXPECT_EQ(import_text("node,label\n0,7\n1,7\n2,7\n", g).block_count(), 1u);
}

TEST(ImportPartition, ReportsMissingNodes) {
  const SignedGraph g(3, {});
  try {
    import_text("0,a\n1,a\n", g);
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("2"), std::string::npos);
  }
  EXPECT_THROW(import_text("0,a\n1,a\n2,a\n3,a\n", g), ValidationError);
  EXPECT_THROW(import_text("0,a\n1,a\n1,b\n2,a\n", g), ValidationError);
}

TEST(ImportPartition, RoundTripsThroughWriter) {
  const SignedGraph g = fixtures::g2x3();
  const Partition p({1, 0, 1, 2, 2, 0});
  std::stringstream buf;
  write_partition(buf, g, p);
  EXPECT_EQ(buf.str().substr(0, 11), "node,label\n");
  EXPECT_EQ(import_partition(buf, g), p.canonical());
}

TEST(RequireCovers, SizeMismatch) {
  EXPECT_THROW(require_covers(fixtures::g2x3(), Partition({0, 0})), ValidationError);
}

#include "fracdim/raster.hpp"

#include "fracdim/errors.hpp"
#include "testutil.hpp"

#include <doctest.h>

#include <fstream>

using namespace fracdim;

TEST_CASE("P1 parsing maps 1 to foreground") {
  const BinaryShape s = decode_pbm("P1\n2 1\n1 0\n", "test");
  CHECK(s.width() == 2);
  CHECK(s.height() == 1);
  CHECK(s.pixels(0, 0));
  CHECK_FALSE(s.pixels(0, 1));
}

TEST_CASE("P1 tolerates comments and packed digits") {
  const BinaryShape s = decode_pbm("P1 # comment\n# another\n 2 2\n10\n01", "test");
  CHECK(s.pixels(0, 0));
  CHECK_FALSE(s.pixels(0, 1));
  CHECK_FALSE(s.pixels(1, 0));
  CHECK(s.pixels(1, 1));
}

TEST_CASE("1x1 foreground encodes to the canonical P4 bytes") {
  BinaryShape s = make_shape(1, 1);
  s.pixels(0, 0) = true;
  const std::vector<std::uint8_t> bytes = encode_pbm(s);
  const std::string expect = "P4\n1 1\n";
  REQUIRE(bytes.size() == expect.size() + 1);
  CHECK(std::string(bytes.begin(), bytes.end() - 1) == expect);
  CHECK(bytes.back() == 0x80);
}

TEST_CASE("P4 rows are padded to byte boundaries") {
  const BinaryShape s = testutil::random_shape(17, 3, 0.5, 11);
  const std::vector<std::uint8_t> bytes = encode_pbm(s);
  const std::string header = "P4\n17 3\n";
  CHECK(bytes.size() == header.size() + 3 * 3);  // ceil(17/8) = 3 bytes per row
}

TEST_CASE("empty-foreground shape round trips") {
  const BinaryShape s = make_shape(5, 4);
  const std::vector<std::uint8_t> bytes = encode_pbm(s);
  const BinaryShape back = decode_pbm(std::string(bytes.begin(), bytes.end()), "test");
  CHECK(back == s);
  CHECK(back.foreground_count() == 0);
}

TEST_CASE("seeded random shapes round trip bit-exactly") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const BinaryShape s = testutil::random_shape(64, 64, 0.35, seed);
    const std::vector<std::uint8_t> bytes = encode_pbm(s);
    const BinaryShape back = decode_pbm(std::string(bytes.begin(), bytes.end()), "test");
    REQUIRE(back == s);
  }
}

TEST_CASE("save then load is identity and re-save is byte-identical") {
  testutil::TempDir dir("tmp_raster");
  const BinaryShape s = testutil::random_shape(37, 21, 0.4, 3);
  const auto path = dir.path() / "shape.pbm";
  save_pbm(s, path);
  const BinaryShape loaded = load_pbm(path);
  CHECK(loaded == s);

  const auto path2 = dir.path() / "shape2.pbm";
  save_pbm(loaded, path2);
  std::ifstream a(path, std::ios::binary), b(path2, std::ios::binary);
  const std::string bytes_a((std::istreambuf_iterator<char>(a)), {});
  const std::string bytes_b((std::istreambuf_iterator<char>(b)), {});
  CHECK(bytes_a == bytes_b);
}

TEST_CASE("parse errors name a byte offset") {
  CHECK_THROWS_WITH_AS(decode_pbm("P2\n1 1\n0", "x"),
                       doctest::Contains("at byte"), IoError);
  CHECK_THROWS_WITH_AS(decode_pbm("P4\n0 3\n", "x"),
                       doctest::Contains("zero width"), IoError);
  CHECK_THROWS_WITH_AS(decode_pbm("P4\n3 0\n", "x"),
                       doctest::Contains("zero height"), IoError);
  CHECK_THROWS_WITH_AS(decode_pbm("P4\n9 2\n\xff", "x"),
                       doctest::Contains("truncated"), IoError);
  CHECK_THROWS_WITH_AS(decode_pbm("P1\n2 2\n1 0 1", "x"),
                       doctest::Contains("truncated"), IoError);
  CHECK_THROWS_AS(load_pbm("does_not_exist.pbm"), IoError);
}

TEST_CASE("pad geometry") {
  SUBCASE("margin 0 is identity") {
    const BinaryShape s = testutil::random_shape(9, 7, 0.5, 5);
    CHECK(pad(s, 0) == s);
  }
  SUBCASE("1x1 with margin 2") {
    const BinaryShape p = pad(testutil::single_pixel(), 2);
    CHECK(p.width() == 5);
    CHECK(p.height() == 5);
    CHECK(p.foreground_count() == 1);
    CHECK(p.pixels(2, 2));
  }
  SUBCASE("foreground count is preserved") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const BinaryShape s = testutil::random_shape(20, 12, 0.3, seed);
      CHECK(pad(s, 7).foreground_count() == s.foreground_count());
    }
  }
  SUBCASE("pad composes additively") {
    const BinaryShape s = testutil::random_shape(13, 8, 0.4, 21);
    CHECK(pad(pad(s, 3), 4) == pad(s, 7));
  }
}

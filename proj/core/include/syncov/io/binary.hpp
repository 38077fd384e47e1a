#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace syncov::io {

/// Little-endian, fixed-width encoder used by every cache file. Doubles are
/// written as their IEEE-754 bit pattern so round trips are bit-exact.
class BinaryWriter {
 public:
  explicit BinaryWriter(std::ostream& out) : out_(out) {}

  void u8(std::uint8_t v);
  void u32(std::uint32_t v);
  void u64(std::uint64_t v);
  void i64(std::int64_t v) { u64(static_cast<std::uint64_t>(v)); }
  void f64(double v);
  void str(std::string_view s);

  /// 8-byte magic followed by a u32 format version.
  void header(std::string_view magic, std::uint32_t version);

 private:
  std::ostream& out_;
};

/// Decoder matching BinaryWriter. Any short read or mismatch is a CacheError.
class BinaryReader {
 public:
  BinaryReader(std::istream& in, std::string name) : in_(in), name_(std::move(name)) {}

  std::uint8_t u8();
  std::uint32_t u32();
  std::uint64_t u64();
  std::int64_t i64() { return static_cast<std::int64_t>(u64()); }
  double f64();
  std::string str();

  /// Reads a count and rejects values larger than `limit`.
  std::uint64_t count(std::uint64_t limit = 1ULL << 32);

  void expect_header(std::string_view magic, std::uint32_t version);

 private:
  void read(char* dst, std::size_t n);

  std::istream& in_;
  std::string name_;
};

}  // namespace syncov::io

#include "syncov/io/binary.hpp"

#include <bit>
#include <cstring>
#include <istream>
#include <ostream>

#include "syncov/error.hpp"

namespace syncov::io {

void BinaryWriter::u8(std::uint8_t v) { out_.put(static_cast<char>(v)); }

void BinaryWriter::u32(std::uint32_t v) {
  char buf[4];
  for (int i = 0; i < 4; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
  out_.write(buf, 4);
}

void BinaryWriter::u64(std::uint64_t v) {
  char buf[8];
  for (int i = 0; i < 8; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
  out_.write(buf, 8);
}

void BinaryWriter::f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }

void BinaryWriter::str(std::string_view s) {
  u64(s.size());
  out_.write(s.data(), static_cast<std::streamsize>(s.size()));
}

void BinaryWriter::header(std::string_view magic, std::uint32_t version) {
  char buf[8] = {};
  std::memcpy(buf, magic.data(), std::min<std::size_t>(magic.size(), 8));
  out_.write(buf, 8);
  u32(version);
}

void BinaryReader::read(char* dst, std::size_t n) {
  in_.read(dst, static_cast<std::streamsize>(n));
  if (static_cast<std::size_t>(in_.gcount()) != n) {
    throw CacheError(name_ + ": unexpected end of file");
  }
}

std::uint8_t BinaryReader::u8() {
  char c = 0;
  read(&c, 1);
  return static_cast<std::uint8_t>(c);
}

std::uint32_t BinaryReader::u32() {
  unsigned char buf[4];
  read(reinterpret_cast<char*>(buf), 4);
  std::uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | buf[i];
  return v;
}

std::uint64_t BinaryReader::u64() {
  unsigned char buf[8];
  read(reinterpret_cast<char*>(buf), 8);
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | buf[i];
  return v;
}

double BinaryReader::f64() { return std::bit_cast<double>(u64()); }

std::string BinaryReader::str() {
  const std::uint64_t n = count();
  std::string s(n, '\0');
  read(s.data(), n);
  return s;
}

std::uint64_t BinaryReader::count(std::uint64_t limit) {
  const std::uint64_t n = u64();
  if (n > limit) throw CacheError(name_ + ": corrupt length field");
  return n;
}

void BinaryReader::expect_header(std::string_view magic, std::uint32_t version) {
  char buf[8];
  read(buf, 8);
  char want[8] = {};
  std::memcpy(want, magic.data(), std::min<std::size_t>(magic.size(), 8));
  if (std::memcmp(buf, want, 8) != 0) {
    throw CacheError(name_ + ": not a " + std::string(magic) + " file");
  }
  const std::uint32_t v = u32();
  if (v != version) {
    throw CacheError(name_ + ": format version " + std::to_string(v) + ", expected " +
                     std::to_string(version));
  }
}

}  // namespace syncov::io

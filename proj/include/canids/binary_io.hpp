#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "canids/error.hpp"

namespace canids {

// Little-endian primitives shared by the dataset and checkpoint containers.
// Values are packed byte by byte, so files are identical on any host.

namespace bio {

inline void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(char((v >> (8 * i)) & 0xff));
}

inline void put_u64(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(char((v >> (8 * i)) & 0xff));
}

inline void put_f64(std::string& out, double v) {
  put_u64(out, std::bit_cast<std::uint64_t>(v));
}

inline void put_bytes(std::string& out, const void* data, std::size_t n) {
  out.append(static_cast<const char*>(data), n);
}

inline void put_string(std::string& out, const std::string& s) {
  put_u32(out, static_cast<std::uint32_t>(s.size()));
  out.append(s);
}

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  std::uint32_t u32() {
    unsigned char b[4];
    read(b, 4);
    std::uint32_t v = 0;
    for (int i = 3; i >= 0; --i) v = (v << 8) | b[i];
    return v;
  }

  std::uint64_t u64() {
    unsigned char b[8];
    read(b, 8);
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
    return v;
  }

  double f64() { return std::bit_cast<double>(u64()); }

  std::string str(std::size_t max_len = ~std::size_t{0}) {
    const std::uint32_t n = u32();
    if (n > max_len) throw FormatError("string field too long");
    std::string s(n, '\0');
    read(s.data(), n);
    return s;
  }

  void read(void* dst, std::size_t n) {
    in_.read(static_cast<char*>(dst), static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(in_.gcount()) != n)
      throw TruncationError("container truncated");
  }

  void f64_array(double* dst, std::size_t count) {
    // bulk read, then fix byte order if the host is big-endian
    read(dst, count * sizeof(double));
    if constexpr (std::endian::native == std::endian::big) {
      auto* bytes = reinterpret_cast<unsigned char*>(dst);
      for (std::size_t i = 0; i < count; ++i) {
        for (int j = 0; j < 4; ++j)
          std::swap(bytes[i * 8 + j], bytes[i * 8 + 7 - j]);
      }
    }
  }

 private:
  std::istream& in_;
};

inline void put_f64_array(std::string& out, const double* src,
                          std::size_t count) {
  if constexpr (std::endian::native == std::endian::little) {
    out.append(reinterpret_cast<const char*>(src), count * sizeof(double));
  } else {
    for (std::size_t i = 0; i < count; ++i) put_f64(out, src[i]);
  }
}

}  // namespace bio

// Writes a whole file atomically: temp file in the same directory + rename.
inline void write_file_atomic(const std::string& path,
                              const std::string& bytes) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + tmp + "' for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("write failed for '" + tmp + "'");
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw IoError("rename failed for '" + path + "'");
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::string bytes((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("read failed for '" + path + "'");
  return bytes;
}

}  // namespace canids

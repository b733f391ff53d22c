#include "hlt/checkpoint.h"

#include <cstdint>
#include <cstring>
#include <fstream>

#include "hlt/errors.h"

namespace hlt {
namespace {

constexpr std::uint32_t kMagic = 0x48504231;  // "HPB1"
constexpr std::uint32_t kVersion = 1;

void write_u32(std::ostream& os, std::uint32_t v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

std::uint32_t read_u32(std::istream& is) {
  std::uint32_t v = 0;
  is.read(reinterpret_cast<char*>(&v), sizeof(v));
  return v;
}

}  // namespace

void save_params(const std::string& path, const std::vector<const Param*>& params) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open for write: " + path);
  write_u32(os, kMagic);
  write_u32(os, kVersion);
  write_u32(os, static_cast<std::uint32_t>(params.size()));
  for (const Param* p : params) {
    write_u32(os, static_cast<std::uint32_t>(p->name.size()));
    os.write(p->name.data(), static_cast<std::streamsize>(p->name.size()));
    write_u32(os, static_cast<std::uint32_t>(p->value.rows));
    write_u32(os, static_cast<std::uint32_t>(p->value.cols));
    os.write(reinterpret_cast<const char*>(p->value.data.data()),
             static_cast<std::streamsize>(p->value.data.size() * sizeof(double)));
  }
  if (!os) throw IoError("write failed: " + path);
}

void load_params(const std::string& path, const std::vector<Param*>& params) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open for read: " + path);
  if (read_u32(is) != kMagic) throw IoError("bad magic in " + path);
  if (read_u32(is) != kVersion) throw IoError("unsupported version in " + path);
  const std::uint32_t n = read_u32(is);
  if (n != params.size()) throw IoError("parameter count mismatch in " + path);
  for (Param* p : params) {
    const std::uint32_t len = read_u32(is);
    std::string name(len, '\0');
    is.read(name.data(), len);
    if (name != p->name) throw IoError("parameter name mismatch: " + name + " vs " + p->name);
    const std::uint32_t rows = read_u32(is);
    const std::uint32_t cols = read_u32(is);
    if (static_cast<int>(rows) != p->value.rows || static_cast<int>(cols) != p->value.cols)
      throw IoError("parameter shape mismatch for " + name);
    is.read(reinterpret_cast<char*>(p->value.data.data()),
            static_cast<std::streamsize>(p->value.data.size() * sizeof(double)));
  }
  if (!is) throw IoError("read failed: " + path);
}

std::uint64_t params_checksum(const std::vector<const Param*>& params) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const Param* p : params) {
    for (double v : p->value.data) {
      std::uint64_t bits;
      std::memcpy(&bits, &v, sizeof(bits));
      for (int i = 0; i < 8; ++i) {
        h ^= (bits >> (8 * i)) & 0xffULL;
        h *= 0x100000001b3ULL;
      }
    }
  }
  return h;
}

}  // namespace hlt

// Disk cache for enumeration results.
//
// File layout (text, one record per line):
//   GCTOP-GRAPHS <format version>
//   digest <cache key>
//   count <k>
//   <k lines of hex-encoded canonical serializations>
//   end <sha256 of the k hex lines joined by '\n'>

#include <unistd.h>

#include <fstream>
#include <random>
#include <sstream>

#include "gctop/canonical.hpp"
#include "gctop/digest.hpp"
#include "gctop/enumerate.hpp"
#include "gctop/errors.hpp"

namespace gctop {

namespace fs = std::filesystem;

namespace {

std::string to_hex(std::string_view bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (unsigned char c : bytes) {
    out.push_back(kDigits[c >> 4]);
    out.push_back(kDigits[c & 15]);
  }
  return out;
}

std::string from_hex(std::string_view hex) {
  if (hex.size() % 2 != 0) throw ValidationError("odd-length hex record");
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    throw ValidationError("bad hex digit");
  };
  std::string out(hex.size() / 2, '\0');
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<char>(nibble(hex[2 * i]) * 16 + nibble(hex[2 * i + 1]));
  }
  return out;
}

std::vector<StableGraph> read_cache(const fs::path& file,
                                    const std::string& digest) {
  std::ifstream in(file);
  if (!in) throw ValidationError("cannot open cache file");
  std::string line;
  auto expect_prefix = [&](const std::string& prefix) {
    if (!std::getline(in, line) || line.rfind(prefix, 0) != 0) {
      throw ValidationError("cache header missing '" + prefix + "'");
    }
    return line.substr(prefix.size());
  };
  if (expect_prefix("GCTOP-GRAPHS ") != std::to_string(kGraphFormatVersion)) {
    throw ValidationError("cache format version mismatch");
  }
  if (expect_prefix("digest ") != digest) {
    throw ValidationError("cache digest mismatch");
  }
  const std::string count_text = expect_prefix("count ");
  std::size_t count = 0;
  try {
    count = std::stoul(count_text);
  } catch (const std::exception&) {
    throw ValidationError("bad cache count");
  }
  std::vector<StableGraph> graphs;
  std::string body;
  for (std::size_t i = 0; i < count; ++i) {
    if (!std::getline(in, line)) throw ValidationError("cache truncated");
    graphs.push_back(deserialize(from_hex(line)));
    if (i) body += '\n';
    body += line;
  }
  if (expect_prefix("end ") != sha256_hex(body)) {
    throw ValidationError("cache checksum mismatch");
  }
  return graphs;
}

void write_cache_atomic(const fs::path& file, const std::string& digest,
                        const std::vector<StableGraph>& graphs) {
  fs::create_directories(file.parent_path());
  std::random_device rd;
  const fs::path tmp =
      file.parent_path() /
      (file.filename().string() + ".tmp." + std::to_string(::getpid()) + "." +
       std::to_string(rd()));
  std::string body;
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    if (i) body += '\n';
    body += to_hex(serialize(graphs[i]));
  }
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw Error("cannot write cache temp file " + tmp.string());
    out << "GCTOP-GRAPHS " << kGraphFormatVersion << '\n'
        << "digest " << digest << '\n'
        << "count " << graphs.size() << '\n';
    if (!graphs.empty()) out << body << '\n';
    out << "end " << sha256_hex(body) << '\n';
    out.flush();
    if (!out) throw Error("failed writing cache temp file " + tmp.string());
  }
  fs::rename(tmp, file);
}

}  // namespace

std::string cache_digest(const EnumSpec& spec) {
  std::ostringstream key;
  key << "gctop-graphs|v" << kGraphFormatVersion << "|g=" << spec.genus
      << "|n=" << spec.legs << "|p=" << spec.edges
      << "|mode=" << to_string(spec.mode)
      << "|orientable=" << (spec.require_orientable ? 1 : 0);
  return sha256_hex(key.str());
}

fs::path cache_file(const fs::path& cache_dir, const EnumSpec& spec) {
  return cache_dir / "gctop" / (cache_digest(spec) + ".graphs");
}

CacheResult cache_get_or_build(const EnumSpec& spec, const fs::path& cache_dir,
                               const EnumOptions& options,
                               const CacheWarning& warn) {
  spec.validate();
  CacheResult result;
  result.digest = cache_digest(spec);
  const fs::path file = cache_file(cache_dir, spec);
  if (fs::exists(file)) {
    try {
      result.graphs = read_cache(file, result.digest);
      result.hit = true;
      return result;
    } catch (const Error& e) {
      if (warn) {
        warn("cache entry " + file.string() + " rejected (" + e.what() +
             "); rebuilding");
      }
    }
  }
  result.graphs = enumerate_graphs(spec, options);
  write_cache_atomic(file, result.digest, result.graphs);
  return result;
}

}  // namespace gctop

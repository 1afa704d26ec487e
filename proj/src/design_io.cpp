#include "unital/design_io.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <system_error>
#include <unistd.h>

namespace unital {

void write_design(std::ostream& out, const UnitalDesign& U) {
  const DesignInfo& i = U.info();
  out << "UNITAL v1\n";
  out << "p=" << i.p << " m=" << i.m << " q=" << i.q << " f=" << i.f << " theta_index=" << i.theta_index
      << " modulus=" << i.modulus << '\n';
  out << "points=" << U.num_points() << " blocks=" << U.num_blocks() << '\n';
  std::string line;
  for (std::size_t b = 0; b < U.num_blocks(); ++b) {
    line.clear();
    for (auto pt : U.block(b)) {
      if (!line.empty()) line += ' ';
      line += std::to_string(pt);
    }
    line += '\n';
    out << line;
  }
}

namespace {

std::map<std::string, std::string> parse_fields(const std::string& line) {
  std::map<std::string, std::string> kv;
  std::istringstream is(line);
  std::string tok;
  while (is >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) throw std::runtime_error("design header: expected key=value, got '" + tok + "'");
    kv[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  return kv;
}

std::uint64_t to_uint(const std::map<std::string, std::string>& kv, const std::string& key) {
  const auto it = kv.find(key);
  if (it == kv.end()) throw std::runtime_error("design header: missing " + key);
  std::size_t used = 0;
  std::uint64_t v = 0;
  try {
    v = std::stoull(it->second, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != it->second.size()) throw std::runtime_error("design header: bad " + key);
  return v;
}

}  // namespace

UnitalDesign read_design(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "UNITAL v1") throw std::runtime_error("not a UNITAL v1 file");
  if (!std::getline(in, line)) throw std::runtime_error("design header truncated");
  const auto h = parse_fields(line);
  DesignInfo info;
  info.p = static_cast<std::uint32_t>(to_uint(h, "p"));
  info.m = static_cast<std::uint32_t>(to_uint(h, "m"));
  info.q = static_cast<std::uint32_t>(to_uint(h, "q"));
  info.theta_index = static_cast<std::uint32_t>(to_uint(h, "theta_index"));
  info.f = h.count("f") ? h.at("f") : "";
  info.modulus = h.count("modulus") ? h.at("modulus") : "";
  if (info.q < 3 || info.q > 1000) throw std::runtime_error("design header: q out of range");
  if (!std::getline(in, line)) throw std::runtime_error("design header truncated");
  const auto s = parse_fields(line);
  const std::uint64_t points = to_uint(s, "points"), blocks = to_uint(s, "blocks");
  UnitalDesign U(info);
  if (points != U.num_points()) throw std::runtime_error("design header: points != q^3 + 1");
  U.reserve(blocks, blocks * (info.q + 1));
  std::vector<std::uint32_t> pts;
  for (std::uint64_t b = 0; b < blocks; ++b) {
    if (!std::getline(in, line)) throw std::runtime_error("design truncated at block " + std::to_string(b));
    pts.clear();
    std::istringstream is(line);
    std::uint64_t v;
    while (is >> v) {
      if (v >= points) throw std::runtime_error("block " + std::to_string(b) + " names point " + std::to_string(v));
      pts.push_back(static_cast<std::uint32_t>(v));
    }
    if (!is.eof()) throw std::runtime_error("block " + std::to_string(b) + " is malformed");
    U.add_block(pts);
  }
  if (std::getline(in, line) && !line.empty()) throw std::runtime_error("trailing data after the last block");
  return U;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::filesystem::path cache_entry_dir(const std::filesystem::path& cache_dir, const DesignInfo& info,
                                      const std::string& f_id) {
  return cache_dir / ("p" + std::to_string(info.p) + "m" + std::to_string(info.m) + "f" + f_id + "t" +
                      std::to_string(info.theta_index));
}

CachedDesign load_or_build(const std::filesystem::path& cache_dir, const DesignInfo& expected,
                           const std::string& f_id, const std::function<UnitalDesign()>& build,
                           std::size_t spot_pairs) {
  const auto file = cache_entry_dir(cache_dir, expected, f_id) / "design.txt";
  CachedDesign out;
  std::error_code ec;
  if (std::filesystem::exists(file, ec)) {
    try {
      std::ifstream in(file, std::ios::binary);
      auto U = read_design(in);
      const DesignInfo& got = U.info();
      const bool same = got.p == expected.p && got.m == expected.m && got.q == expected.q && got.f == expected.f &&
                        got.theta_index == expected.theta_index && got.modulus == expected.modulus;
      if (same && spot_check_design(U, spot_pairs).passed()) {
        out.design = std::move(U);
        out.loaded = true;
        return out;
      }
    } catch (const std::exception&) {
      // fall through to a rebuild
    }
    out.rebuilt = true;
  }
  out.design = build();
  std::ostringstream os;
  write_design(os, out.design);
  write_file_atomic(file, os.str());
  return out;
}

}  // namespace unital

#include "ajt/jones.hpp"

#include <boost/crc.hpp>

#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "ajt/error.hpp"

namespace ajt {

void CableKnot::validate() const {
  for (const auto& [r, s] : slopes) {
    if (s < 2) {
      throw Error(ErrorKind::InvalidKnot, "cable slope (" + std::to_string(r) + "," + std::to_string(s) +
                                              ") violates s >= 2");
    }
    if (std::gcd(r, s) != 1) {
      throw Error(ErrorKind::InvalidKnot, "cable slope (" + std::to_string(r) + "," + std::to_string(s) +
                                              ") violates gcd(r,s) = 1");
    }
  }
}

std::string CableKnot::encoding() const {
  auto pair = [](const std::pair<std::int64_t, std::int64_t>& x) {
    return std::to_string(x.first) + "," + std::to_string(x.second);
  };
  if (slopes.empty()) return "U";
  if (slopes.size() == 1) return "T(" + pair(slopes[0]) + ")";
  if (slopes.size() == 2) return "C(" + pair(slopes[0]) + ";" + pair(slopes[1]) + ")";
  std::string out = "K[";
  for (std::size_t i = 0; i < slopes.size(); ++i) {
    if (i) out += ",";
    out += "(" + pair(slopes[i]) + ")";
  }
  return out + "]";
}

namespace {

void check_torus(std::int64_t p, std::int64_t q) {
  const std::string tag = "(" + std::to_string(p) + "," + std::to_string(q) + ")";
  if (q < 2) throw Error(ErrorKind::InvalidParams, "torus parameters " + tag + " violate q >= 2");
  if (std::abs(p) <= q) throw Error(ErrorKind::InvalidParams, "torus parameters " + tag + " violate |p| > q");
  if (std::gcd(p, q) != 1) throw Error(ErrorKind::InvalidParams, "torus parameters " + tag + " violate gcd(p,q) = 1");
}

class KnotLexer {
 public:
  explicit KnotLexer(std::string_view s) : s_(s) {}
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  void expect(char c) {
    skip();
    if (i_ >= s_.size() || s_[i_] != c) fail(std::string("expected '") + c + "'");
    ++i_;
  }
  std::int64_t integer() {
    skip();
    std::size_t start = i_;
    if (i_ < s_.size() && (s_[i_] == '-' || s_[i_] == '+')) ++i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    const std::string tok(s_.substr(start, i_ - start));
    if (tok.empty() || tok == "-" || tok == "+") fail("expected integer");
    try {
      return std::stoll(tok);
    } catch (const std::exception&) {
      fail("integer out of range");
    }
  }
  void done() {
    skip();
    if (i_ != s_.size()) fail("trailing input");
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorKind::ParseError, "knot notation \"" + std::string(s_) + "\": " + msg);
  }

 private:
  std::string_view s_;
  std::size_t i_ = 0;
};

}  // namespace

CableKnot parse_knot(std::string_view text) {
  KnotLexer lx(text);
  std::size_t start = 0;
  while (start < text.size() && std::isspace(static_cast<unsigned char>(text[start]))) ++start;
  if (start >= text.size()) lx.fail("empty");
  const char head = text[start];
  KnotLexer body(text.substr(start + 1));
  if (head == 'U') {
    body.done();
    return CableKnot::unknot();
  }
  if (head == 'T') {
    body.expect('(');
    const std::int64_t p = body.integer();
    body.expect(',');
    const std::int64_t q = body.integer();
    body.expect(')');
    body.done();
    check_torus(p, q);
    return CableKnot::torus(p, q);
  }
  if (head == 'C') {
    body.expect('(');
    CableParams cp;
    cp.p = body.integer();
    body.expect(',');
    cp.q = body.integer();
    body.expect(';');
    cp.r = body.integer();
    body.expect(',');
    cp.s = body.integer();
    body.expect(')');
    body.done();
    cp.validate();
    return cp.knot();
  }
  lx.fail("expected U, T(p,q) or C(p,q;r,s)");
}

void CableParams::validate() const {
  check_torus(p, q);
  const std::string tag = "(r,s) = (" + std::to_string(r) + "," + std::to_string(s) + ")";
  if (s < 2) throw Error(ErrorKind::InvalidParams, tag + " violates s >= 2");
  if (std::gcd(r, s) != 1) throw Error(ErrorKind::InvalidParams, tag + " violates gcd(r,s) = 1");
}

std::string CableParams::to_string() const {
  return "(" + std::to_string(p) + "," + std::to_string(q) + "," + std::to_string(r) + "," + std::to_string(s) + ")";
}

LaurentScalar bracket(std::int64_t n) {
  if (n == 0) return {};
  if (n < 0) return -SymbolicDomain{}.bracket(-n);
  return SymbolicDomain{}.bracket(n);
}

// ---------------------------------------------------------------- cache

namespace {

constexpr int kCacheVersion = 1;
constexpr const char* kCacheFile = "jones_cache.json";

std::uint32_t checksum(const std::string& payload) {
  boost::crc_32_type crc;
  crc.process_bytes(payload.data(), payload.size());
  return crc.checksum();
}

std::string cache_path() {
  const char* dir = std::getenv("AJT_CACHE_DIR");
  if (dir == nullptr || *dir == '\0') return {};
  return (std::filesystem::path(dir) / kCacheFile).string();
}

}  // namespace

bool load_jones_cache_file(const std::string& path, JonesTable<SymbolicDomain>& table) {
  std::ifstream in(path);
  if (!in) return false;
  std::vector<std::tuple<CableKnot, std::int64_t, LaurentScalar>> entries;
  try {
    const nlohmann::json doc = nlohmann::json::parse(in);
    if (doc.at("version").get<int>() != kCacheVersion) return false;
    const std::string payload = doc.at("entries").dump();
    if (doc.at("checksum").get<std::uint32_t>() != checksum(payload)) return false;
    for (const auto& e : doc.at("entries")) {
      entries.emplace_back(parse_knot(e.at(0).get<std::string>()), e.at(1).get<std::int64_t>(),
                           LaurentScalar::parse(e.at(2).get<std::string>()));
    }
  } catch (const std::exception&) {
    return false;
  }
  for (auto& [knot, n, v] : entries) table.sequence(knot)->seed(n, std::move(v));
  return true;
}

std::size_t save_jones_cache_file(const std::string& path, const JonesTable<SymbolicDomain>& table) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& [key, seq] : table.all()) {
    if (key.front() == 'K') continue;  // deeper cables are not expressible in the notation
    auto values = seq->snapshot();
    std::sort(values.begin(), values.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    for (const auto& [n, v] : values) entries.push_back({key, n, v.to_string()});
  }
  nlohmann::json doc;
  doc["version"] = kCacheVersion;
  doc["checksum"] = checksum(entries.dump());
  doc["entries"] = entries;
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) return 0;
    out << doc.dump();
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  return ec ? 0 : entries.size();
}

JonesTable<SymbolicDomain>& symbolic_jones() {
  static JonesTable<SymbolicDomain>* table = [] {
    auto* t = new JonesTable<SymbolicDomain>();
    const std::string path = cache_path();
    if (!path.empty()) load_jones_cache_file(path, *t);
    return t;
  }();
  return *table;
}

std::size_t save_jones_cache() {
  const std::string path = cache_path();
  if (path.empty()) return 0;
  std::error_code ec;
  std::filesystem::create_directories(std::filesystem::path(path).parent_path(), ec);
  return save_jones_cache_file(path, symbolic_jones());
}

LaurentScalar colored_jones(const CableKnot& knot, std::int64_t n) { return symbolic_jones()(knot, n); }

SequencePtr<SymbolicDomain> torus_jones(std::int64_t p, std::int64_t q) {
  check_torus(p, q);
  return symbolic_jones().sequence(CableKnot::torus(p, q));
}

}  // namespace ajt

#include "measure_io.hpp"

#include <fstream>
#include <sstream>

#include "boolfn.hpp"
#include "errors.hpp"

namespace cubex {

namespace {

constexpr char kDigits[] = "0123456789abcdefghijklmnopqrstuvwxyz";
constexpr int kMaxSerialAlphabet = 36;

int digit_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'z') return c - 'a' + 10;
  return -1;
}

}  // namespace

std::string config_to_string(const Config& c) {
  if (c.k == 2) {
    BitVec v(c.n);
    for (uint32_t x = 0; x < config_size(c.n); ++x) v.set(x, c.values[x] != 0);
    return to_hex(v);
  }
  if (c.k > kMaxSerialAlphabet) throw LimitError("config serialization: alphabet above 36");
  std::string s(config_size(c.n), '0');
  for (uint32_t x = 0; x < config_size(c.n); ++x) s[s.size() - 1 - x] = kDigits[c.values[x]];
  return s;
}

Config config_from_string(int n, int k, const std::string& s) {
  if (k == 2) {
    const BitVec v = bitvec_from_hex(n, s);
    std::vector<uint8_t> values(config_size(n));
    for (uint32_t x = 0; x < config_size(n); ++x) values[x] = v.get(x) ? 1 : 0;
    return Config(n, k, std::move(values));
  }
  if (k > kMaxSerialAlphabet) throw LimitError("config serialization: alphabet above 36");
  if (s.size() != config_size(n))
    throw ParseError("config string: expected exactly " + std::to_string(config_size(n)) +
                     " digits");
  std::vector<uint8_t> values(config_size(n));
  for (uint32_t x = 0; x < config_size(n); ++x) {
    const int v = digit_value(s[s.size() - 1 - x]);
    if (v < 0 || v >= k) throw ParseError("config string: digit outside the alphabet");
    values[x] = static_cast<uint8_t>(v);
  }
  return Config(n, k, std::move(values));
}

std::string measure_to_text(const ExactMeasure& mu) {
  std::ostringstream out;
  out << "cubex-measure v1\n";
  out << "n " << mu.n() << "\n";
  out << "k " << mu.k() << "\n";
  for (const auto& [c, w] : mu.entries())
    out << config_to_string(c) << " " << to_fraction_string(w) << "\n";
  return out.str();
}

ExactMeasure measure_from_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg) -> ParseError {
    return ParseError("measure file line " + std::to_string(lineno) + ": " + msg);
  };
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty()) return true;
    }
    return false;
  };

  if (!next_line() || line != "cubex-measure v1")
    throw ParseError("measure file line 1: expected header 'cubex-measure v1'");

  int n = -1, k = -1;
  for (char want : {'n', 'k'}) {
    if (!next_line()) throw fail("missing dimension header");
    std::istringstream ls(line);
    std::string tag;
    int value;
    std::string extra;
    if (!(ls >> tag >> value) || tag != std::string(1, want) || (ls >> extra))
      throw fail(std::string("expected '") + want + " <int>'");
    (want == 'n' ? n : k) = value;
  }
  if (n < 0 || n > kMaxDim) throw fail("dimension out of range");
  if (k < 2 || k > 255) throw fail("alphabet out of range");

  std::vector<ExactMeasure::Entry> entries;
  while (next_line()) {
    std::istringstream ls(line);
    std::string cfg, frac, extra;
    if (!(ls >> cfg >> frac) || (ls >> extra)) throw fail("expected '<config> <num/den>'");
    try {
      entries.emplace_back(config_from_string(n, k, cfg), parse_fraction(frac));
    } catch (const ParseError& e) {
      throw fail(e.what());
    }
  }
  try {
    return ExactMeasure(n, k, std::move(entries));
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("measure file: ") + e.what());
  }
}

void save_measure(const ExactMeasure& mu, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << measure_to_text(mu);
  if (!out.flush()) throw IoError("write failed: " + path);
}

ExactMeasure load_measure(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return measure_from_text(buf.str());
}

}  // namespace cubex

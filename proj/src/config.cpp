#include "thnorm/config.hpp"

#include <charconv>
#include <map>
#include <optional>
#include <sstream>

#include "thnorm/error.hpp"

namespace thnorm {

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

int parse_int(std::string_view field, int line, int index) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw ParseError("expected an integer, got '" + std::string(field) + "'", line, index);
  }
  return v;
}

struct FactorSpec {
  std::optional<std::vector<Rational>> angles;
  std::optional<RankVector> ranks;
  int line = 0;
};

}  // namespace

Configuration parse_config(std::string_view text) {
  std::optional<int> n;
  int n_line = 0;
  std::map<int, FactorSpec> factors;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto fields = split_fields(line);
    if (fields.empty()) continue;

    const std::string_view key = fields[0];
    if (key == "n") {
      if (fields.size() != 2) throw ParseError("'n' takes exactly one value", line_no, fields.size() < 2 ? 1 : 3);
      if (n) throw ParseError("'n' given twice", line_no, 1);
      n = parse_int(fields[1], line_no, 2);
      if (*n < 1 || *n > kMaxDirectFactors) {
        throw ParseError("n must be in 1.." + std::to_string(kMaxDirectFactors), line_no, 2);
      }
      n_line = line_no;
      continue;
    }
    if (key != "angles" && key != "ranks") throw ParseError("unknown key '" + std::string(key) + "'", line_no, 1);
    if (fields.size() < 2) throw ParseError("missing factor index", line_no, 2);
    const int k = parse_int(fields[1], line_no, 2);
    if (k < 1) throw ParseError("factor index must be positive", line_no, 2);
    FactorSpec& spec = factors[k];
    spec.line = line_no;

    if (key == "angles") {
      if (spec.angles) throw ParseError("angles for factor " + std::to_string(k) + " given twice", line_no, 1);
      std::vector<Rational> angles;
      for (std::size_t f = 2; f < fields.size(); ++f) {
        const int field = static_cast<int>(f) + 1;
        Rational a;
        try {
          a = Rational::parse(fields[f]);
        } catch (const Error&) {
          throw ParseError("bad angle '" + std::string(fields[f]) + "'", line_no, field);
        }
        if (a.sign() < 0 || a >= Rational(1)) throw ParseError("angle outside [0, 1)", line_no, field);
        angles.push_back(a);
      }
      if (angles.empty()) throw ParseError("no angles given", line_no, 3);
      spec.angles = std::move(angles);
    } else {
      if (spec.ranks) throw ParseError("ranks for factor " + std::to_string(k) + " given twice", line_no, 1);
      std::vector<int> ranks;
      for (std::size_t f = 2; f < fields.size(); ++f) ranks.push_back(parse_int(fields[f], line_no, static_cast<int>(f) + 1));
      if (ranks.empty()) throw ParseError("no ranks given", line_no, 3);
      try {
        spec.ranks = RankVector(std::span<const int>(ranks));
      } catch (const ValidationError& e) {
        throw ParseError(e.what(), line_no, 3);
      }
    }
  }

  if (!n) throw ParseError("missing 'n' line");
  const auto m = static_cast<std::size_t>(2 * *n + 1);
  std::vector<RankVector> ranks;
  Configuration::Angles angles;
  bool all_angles = true;
  for (int k = 1; k <= *n; ++k) {
    const auto it = factors.find(k);
    if (it == factors.end()) throw ParseError("factor " + std::to_string(k) + " is missing", n_line, 2);
    FactorSpec& spec = it->second;
    if (spec.angles && spec.angles->size() != m) {
      throw ParseError("factor " + std::to_string(k) + " needs " + std::to_string(m) + " angles", spec.line, 3);
    }
    if (spec.ranks && spec.ranks->size() != m) {
      throw ParseError("factor " + std::to_string(k) + " needs " + std::to_string(m) + " ranks", spec.line, 3);
    }
    RankVector rv = spec.ranks ? *spec.ranks : ranks_from_angles(*spec.angles);
    if (spec.ranks && spec.angles && ranks_from_angles(*spec.angles) != *spec.ranks) {
      throw ValidationError("factor " + std::to_string(k) + ": ranks " + spec.ranks->to_string() +
                            " disagree with angles (which rank to " + ranks_from_angles(*spec.angles).to_string() + ")");
    }
    ranks.push_back(rv);
    if (spec.angles) {
      angles.push_back(*spec.angles);
    } else {
      all_angles = false;
    }
  }
  for (const auto& [k, spec] : factors) {
    if (k > *n) throw ParseError("factor index " + std::to_string(k) + " exceeds n", spec.line, 2);
  }
  if (all_angles) return Configuration(std::move(ranks), std::move(angles));
  return Configuration(std::move(ranks));
}

std::string format_config(const Configuration& cfg) {
  std::ostringstream out;
  out << "n " << cfg.n() << "\n";
  for (int k = 0; k < cfg.n(); ++k) {
    if (cfg.angles()) {
      out << "angles " << (k + 1);
      for (const auto& a : (*cfg.angles())[static_cast<std::size_t>(k)]) out << ' ' << a.to_string();
      out << "\n";
    }
    out << "ranks " << (k + 1);
    for (auto r : cfg.factor(static_cast<std::size_t>(k)).ranks()) out << ' ' << static_cast<int>(r);
    out << "\n";
  }
  return out.str();
}

}  // namespace thnorm

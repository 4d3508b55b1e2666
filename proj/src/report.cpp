#include "thnorm/report.hpp"

#include <charconv>
#include <cstdio>
#include <sstream>

#include "json.hpp"
#include "thnorm/error.hpp"

namespace thnorm {

using Json = nlohmann::ordered_json;

namespace {

std::string decimal(const Rational& r, int digits = 12) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, r.to_double());
  return buf;
}

RankVector parse_ranks(const std::string& text) {
  std::vector<int> ranks;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find(',', pos), text.size());
    int v = 0;
    const auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + end, v);
    if (ec != std::errc{} || ptr != text.data() + end) throw ParseError("malformed rank list '" + text + "'");
    ranks.push_back(v);
    pos = end + 1;
  }
  return RankVector(std::span<const int>(ranks));
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

Json witness_json(const Witness& w) {
  Json j;
  Json factors = Json::array();
  for (const auto& f : w.config.factors()) factors.push_back(f.to_string());
  j["factors"] = factors;
  if (w.config.angles()) {
    Json angles = Json::array();
    for (const auto& circle : *w.config.angles()) {
      Json c = Json::array();
      for (const auto& a : circle) c.push_back(a.to_string());
      angles.push_back(c);
    }
    j["angles"] = angles;
  }
  j["theta"] = w.theta.to_string();
  return j;
}

Witness witness_from_json(const Json& j) {
  std::vector<RankVector> factors;
  for (const auto& f : j.at("factors")) factors.push_back(parse_ranks(f.get<std::string>()));
  const Rational theta = Rational::parse(j.at("theta").get<std::string>());
  if (j.contains("angles")) {
    Configuration::Angles angles;
    for (const auto& circle : j.at("angles")) {
      std::vector<Rational> c;
      for (const auto& a : circle) c.push_back(Rational::parse(a.get<std::string>()));
      angles.push_back(std::move(c));
    }
    return {Configuration(std::move(factors), std::move(angles)), theta};
  }
  return {Configuration(std::move(factors)), theta};
}

Json witnesses_json(const std::vector<Witness>& ws) {
  Json arr = Json::array();
  for (const auto& w : ws) arr.push_back(witness_json(w));
  return arr;
}

std::vector<Witness> witnesses_from_json(const Json& j) {
  std::vector<Witness> out;
  for (const auto& w : j) out.push_back(witness_from_json(w));
  return out;
}

template <typename F>
auto parse_json(std::string_view text, F&& body) {
  try {
    return body(Json::parse(text));
  } catch (const Json::exception& e) {
    throw ParseError(std::string("malformed report: ") + e.what());
  }
}

}  // namespace

std::string to_string(ReportFormat format) {
  switch (format) {
    case ReportFormat::json:
      return "json";
    case ReportFormat::text:
      return "text";
    case ReportFormat::csv:
      return "csv";
  }
  return "unknown";
}

ReportFormat parse_report_format(std::string_view text) {
  if (text == "json") return ReportFormat::json;
  if (text == "text") return ReportFormat::text;
  if (text == "csv") return ReportFormat::csv;
  throw ParseError("unknown format '" + std::string(text) + "'");
}

// --- Norm reports -----------------------------------------------------------

std::string serialize(const NormReport& r, ReportFormat format, bool with_timing) {
  if (format == ReportFormat::json) {
    Json j;
    j["version"] = r.version;
    j["n"] = r.n;
    j["mode"] = to_string(r.mode);
    j["norm"] = r.norm.to_string();
    j["complete"] = r.complete;
    j["budget_exceeded"] = r.budget_exceeded;
    j["witness_count"] = r.witness_count;
    j["witnesses"] = witnesses_json(r.witnesses);
    Json patterns = Json::array();
    for (const auto& pm : r.per_pattern) {
      Json p;
      p["pattern"] = pm.pattern.to_string();
      p["max"] = pm.max.to_string();
      p["table"] = pm.table;
      p["witness_count"] = pm.witness_count;
      p["witnesses"] = witnesses_json(pm.witnesses);
      patterns.push_back(p);
    }
    j["per_pattern"] = patterns;
    Json counts = Json::array();
    for (const auto& c : r.class_counts) counts.push_back({{"name", c.name}, {"raw", c.raw}, {"unique", c.unique}});
    j["class_counts"] = counts;
    j["samples"] = r.samples;
    Json fp = Json::object();
    for (const auto& [k, v] : r.fingerprints) fp[k] = v;
    j["fingerprints"] = fp;
    j["notes"] = r.notes;
    if (with_timing) {
      j["elapsed_seconds"] = r.elapsed_seconds;
      j["threads"] = r.threads;
    }
    return j.dump(2) + "\n";
  }

  std::ostringstream out;
  if (format == ReportFormat::csv) {
    out << "pattern,max,decimal,witness_count,table\n";
    for (const auto& pm : r.per_pattern) {
      out << csv_quote(pm.pattern.to_string()) << ',' << pm.max.to_string() << ',' << decimal(pm.max) << ','
          << pm.witness_count << ',' << pm.table << '\n';
    }
    return out.str();
  }

  out << r.version << "\n";
  out << "n                " << r.n << "\n";
  out << "mode             " << to_string(r.mode) << "\n";
  out << "norm             " << r.norm.to_string() << "  (" << decimal(r.norm) << ")\n";
  out << "complete         " << (r.complete ? "yes" : "no") << "\n";
  if (r.budget_exceeded) out << "budget exceeded  yes\n";
  if (r.samples) out << "samples          " << r.samples << "\n";
  for (const auto& c : r.class_counts) out << "classes          " << c.name << " " << c.raw << " raw, " << c.unique << " unique\n";
  for (const auto& [k, v] : r.fingerprints) out << "fingerprint      " << k << " " << v << "\n";
  if (with_timing) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", r.elapsed_seconds);
    out << "elapsed          " << buf << " s on " << r.threads << " thread(s)\n";
  }
  out << "witnesses        " << r.witness_count << " attaining cells\n";
  for (const auto& w : r.witnesses) out << "  " << w.config.to_string() << "  " << w.theta.to_string() << "\n";
  if (!r.per_pattern.empty()) {
    out << "per-pattern maxima\n";
    for (const auto& pm : r.per_pattern) {
      if (pm.max.is_zero()) continue;
      out << "  " << pm.pattern.to_string() << "  " << pm.max.to_string() << "\n";
    }
    std::size_t zeros = 0;
    for (const auto& pm : r.per_pattern) zeros += pm.max.is_zero() ? 1 : 0;
    if (zeros) out << "  (" << zeros << " patterns with maximum 0 omitted)\n";
  }
  for (const auto& note : r.notes) out << "note: " << note << "\n";
  return out.str();
}

NormReport parse_norm_report(std::string_view json) {
  return parse_json(json, [](const Json& j) {
    NormReport r;
    r.version = j.at("version").get<std::string>();
    r.n = j.at("n").get<int>();
    r.mode = parse_search_mode(j.at("mode").get<std::string>());
    r.norm = Rational::parse(j.at("norm").get<std::string>());
    r.complete = j.at("complete").get<bool>();
    r.budget_exceeded = j.at("budget_exceeded").get<bool>();
    r.witness_count = j.at("witness_count").get<std::uint64_t>();
    r.witnesses = witnesses_from_json(j.at("witnesses"));
    for (const auto& p : j.at("per_pattern")) {
      PatternMax pm{XPattern(parse_ranks(p.at("pattern").get<std::string>())),
                    Rational::parse(p.at("max").get<std::string>()), witnesses_from_json(p.at("witnesses")),
                    p.at("witness_count").get<std::uint64_t>(), p.at("table").get<std::string>()};
      r.per_pattern.push_back(std::move(pm));
    }
    for (const auto& c : j.at("class_counts")) {
      r.class_counts.push_back({c.at("name").get<std::string>(), c.at("raw").get<std::size_t>(), c.at("unique").get<std::size_t>()});
    }
    r.samples = j.at("samples").get<std::uint64_t>();
    for (const auto& [k, v] : j.at("fingerprints").items()) r.fingerprints[k] = v.get<std::string>();
    r.notes = j.at("notes").get<std::vector<std::string>>();
    if (j.contains("elapsed_seconds")) r.elapsed_seconds = j.at("elapsed_seconds").get<double>();
    if (j.contains("threads")) r.threads = j.at("threads").get<int>();
    return r;
  });
}

// --- Verification reports ---------------------------------------------------

std::string serialize(const VerificationReport& r, ReportFormat format, bool with_timing) {
  std::size_t failed = 0, asserted = 0;
  for (const auto& i : r.items) {
    asserted += i.asserted ? 1 : 0;
    failed += i.asserted && !i.pass ? 1 : 0;
  }
  if (format == ReportFormat::json) {
    Json j;
    j["version"] = r.version;
    j["suite"] = r.suite;
    j["seed"] = r.seed;
    j["samples"] = r.samples;
    j["passed"] = failed == 0;
    j["asserted"] = asserted;
    j["failed"] = failed;
    Json items = Json::array();
    for (const auto& i : r.items) {
      Json it;
      it["id"] = i.id;
      it["location"] = i.location;
      it["expected"] = i.expected;
      it["computed"] = i.computed;
      it["status"] = !i.asserted ? "info" : i.pass ? "pass" : "fail";
      if (with_timing) it["elapsed_seconds"] = i.elapsed_seconds;
      items.push_back(it);
    }
    j["items"] = items;
    if (with_timing) {
      j["elapsed_seconds"] = r.elapsed_seconds;
      j["threads"] = r.threads;
    }
    return j.dump(2) + "\n";
  }

  std::ostringstream out;
  if (format == ReportFormat::csv) {
    out << "id,status,expected,computed,location" << (with_timing ? ",elapsed_seconds" : "") << "\n";
    for (const auto& i : r.items) {
      out << csv_quote(i.id) << ',' << (!i.asserted ? "info" : i.pass ? "pass" : "fail") << ',' << csv_quote(i.expected)
          << ',' << csv_quote(i.computed) << ',' << csv_quote(i.location);
      if (with_timing) out << ',' << i.elapsed_seconds;
      out << '\n';
    }
    return out.str();
  }

  out << r.version << "  suite " << r.suite << "  seed " << r.seed << "  samples " << r.samples << "\n";
  for (const auto& i : r.items) {
    const char* status = !i.asserted ? "INFO" : i.pass ? "PASS" : "FAIL";
    out << status << "  " << i.id << "  expected " << i.expected << "  computed " << i.computed << "  [" << i.location << "]";
    if (with_timing) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.3f", i.elapsed_seconds);
      out << "  " << buf << " s";
    }
    out << "\n";
  }
  out << (failed == 0 ? "all " : "") << asserted - failed << "/" << asserted << " asserted items passed\n";
  return out.str();
}

VerificationReport parse_verification_report(std::string_view json) {
  return parse_json(json, [](const Json& j) {
    VerificationReport r;
    r.version = j.at("version").get<std::string>();
    r.suite = j.at("suite").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.samples = j.at("samples").get<std::uint64_t>();
    for (const auto& it : j.at("items")) {
      VerificationItem i;
      i.id = it.at("id").get<std::string>();
      i.location = it.at("location").get<std::string>();
      i.expected = it.at("expected").get<std::string>();
      i.computed = it.at("computed").get<std::string>();
      const auto status = it.at("status").get<std::string>();
      if (status != "pass" && status != "fail" && status != "info") throw ParseError("unknown item status '" + status + "'");
      i.asserted = status != "info";
      i.pass = status != "fail";
      if (it.contains("elapsed_seconds")) i.elapsed_seconds = it.at("elapsed_seconds").get<double>();
      r.items.push_back(std::move(i));
    }
    if (j.contains("elapsed_seconds")) r.elapsed_seconds = j.at("elapsed_seconds").get<double>();
    if (j.contains("threads")) r.threads = j.at("threads").get<int>();
    return r;
  });
}

// --- Bounds, evaluations, class tables -------------------------------------

std::string serialize(const BoundResult& b, ReportFormat format) {
  if (format == ReportFormat::json) {
    Json j;
    j["n"] = b.n;
    j["norm"] = b.norm.to_string();
    j["volume"] = b.volume;
    j["symbolic"] = b.symbolic;
    j["lower_bound"] = b.decimal;
    j["exact"] = b.exact ? Json(b.exact->to_string()) : Json(nullptr);
    if (!b.genera.empty()) {
      j["genera"] = b.genera;
      j["product_form"] = b.product_form;
    }
    return j.dump(2) + "\n";
  }
  std::ostringstream out;
  if (format == ReportFormat::csv) {
    out << "n,norm,volume,symbolic,lower_bound,exact\n";
    out << b.n << ',' << b.norm.to_string() << ',' << csv_quote(b.volume) << ',' << csv_quote(b.symbolic) << ','
        << b.decimal << ',' << (b.exact ? b.exact->to_string() : "") << '\n';
    return out.str();
  }
  out << "n            " << b.n << "\n";
  out << "norm         " << b.norm.to_string() << "\n";
  out << "volume       " << b.volume << "\n";
  out << "lower bound  " << b.symbolic << " = " << b.decimal << "\n";
  if (b.exact) out << "exact        " << b.exact->to_string() << "\n";
  if (!b.genera.empty()) {
    out << "genera      ";
    for (int g : b.genera) out << ' ' << g;
    out << "\nproduct form " << b.product_form << "  (surface norms 4g-4)\n";
  }
  return out.str();
}

std::string serialize_eval(const Configuration& cfg, const Rational& theta, ReportFormat format) {
  if (format == ReportFormat::json) {
    Json j;
    j["n"] = cfg.n();
    j["configuration"] = witness_json({cfg, theta});
    j["theta"] = theta.to_string();
    j["decimal"] = decimal(theta, 17);
    return j.dump(2) + "\n";
  }
  std::ostringstream out;
  if (format == ReportFormat::csv) {
    out << "n,configuration,theta,decimal\n";
    out << cfg.n() << ',' << csv_quote(cfg.to_string()) << ',' << theta.to_string() << ',' << decimal(theta, 17) << '\n';
    return out.str();
  }
  out << "configuration  " << cfg.to_string() << "\n";
  out << "theta          " << theta.to_string() << "  (" << decimal(theta) << ")\n";
  return out.str();
}

std::string serialize_classes(int n, ClassTableKind kind, const std::vector<RankVector>& classes, ReportFormat format) {
  if (format == ReportFormat::json) {
    Json j;
    j["n"] = n;
    j["kind"] = to_string(kind);
    j["count"] = classes.size();
    Json arr = Json::array();
    for (const auto& c : classes) arr.push_back(c.to_string());
    j["classes"] = arr;
    return j.dump(2) + "\n";
  }
  std::ostringstream out;
  if (format == ReportFormat::csv) {
    out << "index,ranks\n";
    for (std::size_t i = 0; i < classes.size(); ++i) out << i << ',' << csv_quote(classes[i].to_string()) << '\n';
    return out.str();
  }
  out << to_string(kind) << " classes for n = " << n << ": " << classes.size() << "\n";
  for (const auto& c : classes) out << c.to_string() << "\n";
  return out.str();
}

}  // namespace thnorm

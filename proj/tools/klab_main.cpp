#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "klab/adlv.hpp"
#include "klab/kottwitz.hpp"
#include "klab/modular.hpp"
#include "klab/rootdata.hpp"

using json = nlohmann::ordered_json;
using namespace klab;

namespace {

constexpr int kSchemaVersion = 1;

enum Exit { ok = 0, mismatch = 1, usage = 2, guard = 3 };

struct Globals {
  int precision = 0;
  long depth = 3;
  std::size_t cap = 200000;
  std::string format = "text";
  std::uint64_t seed = 1;
  unsigned jobs = 1;
  std::string cache_dir;
  bool no_cache = false;
};

std::string rat(const Rational& q) {
  Rational c(q);
  c.canonicalize();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

std::string read_file(const std::string& path) {
  if (path == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// FNV-1a, stable across builds so cache file names survive recompilation.
std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

class Cache {
 public:
  Cache(const Globals& g, std::string command, std::string key)
      : enabled_(!g.cache_dir.empty() && !g.no_cache), key_(std::move(key)) {
    if (!enabled_) return;
    std::ostringstream name;
    name << command << "-" << std::hex << std::setw(16) << std::setfill('0') << fnv1a(key_) << ".json";
    path_ = std::filesystem::path(g.cache_dir) / name.str();
  }
  std::optional<json> load() const {
    if (!enabled_ || !std::filesystem::exists(path_)) return std::nullopt;
    try {
      std::ifstream in(path_);
      json doc = json::parse(in);
      if (doc.value("cache_key", "") != key_ || doc.value("schema_version", 0) != kSchemaVersion) return std::nullopt;
      doc.erase("cache_key");
      doc["cached"] = true;
      return doc;
    } catch (const json::exception&) {
      return std::nullopt;
    }
  }
  void store(const json& doc) const {
    if (!enabled_) return;
    std::filesystem::create_directories(path_.parent_path());
    json copy = doc;
    copy["cache_key"] = key_;
    auto tmp = path_;
    tmp += ".tmp";
    {
      std::ofstream out(tmp);
      out << copy.dump() << "\n";
    }
    std::filesystem::rename(tmp, path_);
  }

 private:
  bool enabled_;
  std::string key_;
  std::filesystem::path path_;
};

// ---- rendering ---------------------------------------------------------

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

std::string cell(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "";
  return v.dump();
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

void print_table(const Table& t, const std::string& format) {
  if (format == "csv") {
    auto line = [](const std::vector<std::string>& r) {
      for (std::size_t i = 0; i < r.size(); ++i) std::cout << (i ? "," : "") << csv_escape(r[i]);
      std::cout << "\n";
    };
    line(t.header);
    for (const auto& r : t.rows) line(r);
    return;
  }
  std::vector<std::size_t> width(t.header.size(), 0);
  for (std::size_t i = 0; i < t.header.size(); ++i) width[i] = t.header[i].size();
  for (const auto& r : t.rows)
    for (std::size_t i = 0; i < r.size() && i < width.size(); ++i) width[i] = std::max(width[i], r[i].size());
  auto line = [&](const std::vector<std::string>& r) {
    for (std::size_t i = 0; i < r.size(); ++i) std::cout << (i ? "  " : "") << std::setw(static_cast<int>(width[i])) << r[i];
    std::cout << "\n";
  };
  line(t.header);
  for (const auto& r : t.rows) line(r);
}

json request_json(const CurveCountRequest& r) {
  return {{"p", r.p}, {"m", r.m}, {"N", r.N}, {"kind", to_string(r.kind)}};
}

std::string request_text(const json& r) {
  std::ostringstream os;
  os << "p=" << r["p"] << " m=" << r["m"] << " N=" << r["N"] << " kind=" << r["kind"].get<std::string>();
  return os.str();
}

void render_pcf(const json& doc, const std::string& format) {
  if (format == "json") {
    std::cout << doc.dump(2) << "\n";
    return;
  }
  const json& req = doc["request"];
  Table t;
  if (format == "csv") {
    t.header = {"record", "p", "m", "N", "kind", "trace", "det", "type", "c1", "c2", "O", "TO", "value"};
    auto base = [&](const std::string& rec) {
      return std::vector<std::string>{rec, cell(req["p"]), cell(req["m"]), cell(req["N"]), cell(req["kind"])};
    };
    for (const auto& term : doc["rhs"]["terms"]) {
      auto r = base("term");
      const auto& cp = term["charpoly"];
      r.push_back(std::to_string(-cp[1].get<long>()));
      r.push_back(cell(cp[2]));
      for (auto k : {"type", "c1", "c2", "O", "TO", "value"}) r.push_back(cell(term[k]));
      t.rows.push_back(r);
    }
    auto summary = [&](const std::string& rec, const json& v) {
      auto r = base(rec);
      r.resize(t.header.size() - 1);
      r.push_back(cell(v));
      t.rows.push_back(r);
    };
    summary("rhs_total", doc["rhs"]["total"]);
    if (doc.contains("lhs")) summary("lhs", doc["lhs"]);
    if (doc.contains("match")) summary("match", doc["match"]);
    print_table(t, format);
    return;
  }
  std::cout << "request " << request_text(req) << "\n";
  t.header = {"trace", "det", "type", "c1", "c2", "O", "TO", "value"};
  for (const auto& term : doc["rhs"]["terms"]) {
    const auto& cp = term["charpoly"];
    t.rows.push_back({std::to_string(-cp[1].get<long>()), cell(cp[2]), cell(term["type"]), cell(term["c1"]),
                      cell(term["c2"]), cell(term["O"]), cell(term["TO"]), cell(term["value"])});
  }
  print_table(t, format);
  for (const auto& s : doc["rhs"]["skipped"]) std::cout << "skipped " << s.get<std::string>() << "\n";
  std::cout << "rhs total " << doc["rhs"]["total"].get<std::string>() << "\n";
  if (doc.contains("lhs")) std::cout << "lhs " << cell(doc["lhs"]) << "\n";
  if (doc.contains("match")) std::cout << (doc["match"].get<bool>() ? "match" : "MISMATCH") << "\n";
}

void render_generic(const json& doc, const Table& t, const std::vector<std::string>& summary, const std::string& format) {
  if (format == "json") {
    std::cout << doc.dump(2) << "\n";
    return;
  }
  if (format == "text")
    for (const auto& s : summary) std::cout << s << "\n";
  if (!t.header.empty()) print_table(t, format);
}

// ---- subcommands -------------------------------------------------------

json pcf_json(const PcfReport& rep, const std::string& measure) {
  json terms = json::array();
  for (const auto& t : rep.terms) {
    json locals = json::array();
    for (const auto& l : t.locals)
      locals.push_back({{"l", l.l}, {"conductor", l.conductor}, {"level_exponent", l.level_exponent},
                        {"unit_index", l.unit_index.get_str()}, {"value", rat(l.value)}});
    terms.push_back({{"charpoly", {1, -t.trace, t.det.get_si()}},
                     {"type", t.type},
                     {"c1", rat(t.c1)},
                     {"c2", rat(t.c2)},
                     {"O", rat(t.O)},
                     {"TO", rat(t.TO)},
                     {"value", rat(t.value)},
                     {"delta", t.delta},
                     {"locals", locals}});
  }
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["request"] = request_json(rep.request);
  doc["measure"] = measure;
  if (rep.has_lhs) doc["lhs"] = rep.lhs.get_si();
  doc["rhs"] = {{"terms", terms}, {"skipped", rep.skipped}, {"total", rat(rep.rhs_total)}};
  if (rep.has_lhs) doc["match"] = rep.match;
  doc["timings"] = rep.timings;
  return doc;
}

struct CurveArgs {
  long p = 5;
  int m = 1;
  long N = 3;
  std::string kind = "Y";
  std::string measure = "maximal";
  std::string strategy = "weierstrass";
  bool corrupt = false;

  void add_to(CLI::App* sub, bool rhs_options, bool strategy_option) {
    sub->add_option("--p", p, "residue characteristic")->required();
    sub->add_option("--m", m, "degree of the finite field over F_p")->required();
    sub->add_option("--N", N, "level")->required();
    sub->add_option("--kind", kind, "Y (full level) or Y1 (point of order N)")->capture_default_str();
    if (rhs_options) {
      sub->add_option("--measure", measure, "centralizer normalization")
          ->check(CLI::IsMember({"maximal", "generated"}))
          ->capture_default_str();
      sub->add_flag("--corrupt-normalization", corrupt, "negative control: break the c1 normalization");
    }
    if (strategy_option)
      sub->add_option("--strategy", strategy, "curve enumeration")
          ->check(CLI::IsMember({"weierstrass", "twists"}))
          ->capture_default_str();
  }
  CurveCountRequest request() const {
    CurveCountRequest r;
    r.p = p;
    r.m = m;
    r.N = N;
    r.kind = curve_kind_from_string(kind);
    r.validate();
    return r;
  }
  RhsOptions options(const Globals& g) const {
    RhsOptions o;
    o.measure = measure == "generated" ? CentralizerMeasure::generated_order : CentralizerMeasure::maximal_order;
    o.jobs = g.jobs;
    o.depth = g.depth;
    o.cap = g.cap;
    o.corrupt_normalization = corrupt;
    return o;
  }
  std::string key(const std::string& command, const Globals& g) const {
    std::ostringstream os;
    os << command << " p=" << p << " m=" << m << " N=" << N << " kind=" << to_string(curve_kind_from_string(kind))
       << " measure=" << measure << " corrupt=" << corrupt << " strategy=" << strategy << " depth=" << g.depth
       << " cap=" << g.cap;
    return os.str();
  }
};

int run_pcf(const CurveArgs& a, const Globals& g, bool with_lhs) {
  auto req = a.request();
  const std::string command = with_lhs ? "compare" : "rhs";
  Cache cache(g, command, a.key(command, g));
  json doc;
  if (auto hit = cache.load()) {
    doc = *hit;
  } else {
    auto opts = a.options(g);
    PcfReport rep = with_lhs ? compare(req, opts) : rhs_assemble(req, opts);
    rep.request = req;
    doc = pcf_json(rep, a.measure);
    cache.store(doc);
  }
  render_pcf(doc, g.format);
  if (with_lhs && !doc["match"].get<bool>()) return mismatch;
  if (!with_lhs && Rational(doc["rhs"]["total"].get<std::string>()).get_den() != 1) return mismatch;
  return ok;
}

int run_count(const CurveArgs& a, const Globals& g) {
  auto req = a.request();
  Cache cache(g, "count", a.key("count", g));
  json doc;
  if (auto hit = cache.load()) {
    doc = *hit;
  } else {
    auto t0 = std::chrono::steady_clock::now();
    auto pc = count_points_detail(req, a.strategy == "twists" ? CountStrategy::j_invariant_twists
                                                              : CountStrategy::weierstrass_pairs);
    json by_trace = json::array();
    for (const auto& [tr, v] : pc.by_trace) by_trace.push_back({{"trace", tr}, {"value", rat(v)}});
    doc["schema_version"] = kSchemaVersion;
    doc["request"] = request_json(req);
    doc["strategy"] = a.strategy;
    doc["count"] = pc.count.get_si();
    doc["mass"] = rat(pc.mass);
    doc["by_trace"] = by_trace;
    doc["timings"] = {{"lhs", seconds_since(t0)}};
    cache.store(doc);
  }
  Table t{{"trace", "value"}, {}};
  for (const auto& r : doc["by_trace"]) t.rows.push_back({cell(r["trace"]), cell(r["value"])});
  render_generic(doc, t,
                 {"request " + request_text(doc["request"]), "count " + cell(doc["count"]), "mass " + cell(doc["mass"])},
                 g.format);
  return ok;
}

int run_kgroup(const std::string& file, const std::string& preset, const Globals& g) {
  GaloisModule pi1_I, pi1_G;
  IntMatrix map;
  PlaceSystem places;
  std::string source;
  if (!preset.empty()) {
    auto amb = presets::ambient_by_name(preset);
    pi1_I = amb->pi1_I;
    pi1_G = amb->pi1_G;
    map = amb->map;
    places = amb->places;
    source = preset;
  } else {
    auto prob = parse_kgroup_problem(read_file(file));
    pi1_I = prob.pi1_I;
    pi1_G = prob.pi1_G;
    map = prob.map;
    places = PlaceSystem::standard(prob.group, prob.complex_conjugation);
    source = file;
  }
  auto k = kottwitz_k_group(pi1_I, pi1_G, map, places);
  FgAbGroup kg = k.k_group();
  json place_list = json::array();
  for (const auto& pl : places.all()) place_list.push_back(pl.label);
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["source"] = source;
  doc["galois_order"] = places.group.order();
  doc["places"] = place_list;
  doc["e_group"] = k.e.e.describe();
  doc["k_group"] = kg.describe();
  doc["order"] = kg.is_finite() ? json(kg.order().get_str()) : json(nullptr);
  Table t{{"character", "order"}, {}};
  if (kg.is_finite())
    for (const auto& chi : k.duality.characters()) {
      auto o = kg.element_order(chi);
      t.rows.push_back({to_string(chi), o ? o->get_str() : "inf"});
    }
  render_generic(doc, t, {"source " + source, "K group " + kg.describe(), "e group " + k.e.e.describe()}, g.format);
  return ok;
}

int run_endoscopy(const std::string& group, std::size_t bound, const Globals& g) {
  RootDatum rd = presets::by_name(group);
  auto data = enumerate_elliptic_endoscopy(rd, bound);
  json rows = json::array();
  Table t{{"index", "s", "twist", "elliptic", "lambda", "iota", "H"}, {}};
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto& d = data[i];
    std::string s;
    for (std::size_t j = 0; j < d.s.size(); ++j) s += (j ? " " : "") + rat(d.s[j]);
    json iv = nullptr;
    try {
      iv = rat(iota(rd, d));
    } catch (const std::domain_error&) {
    }
    rows.push_back({{"s", s},
                    {"twist", d.twist_label},
                    {"elliptic", d.elliptic},
                    {"lambda", d.out_order.get_str()},
                    {"iota", iv},
                    {"h", d.describe()}});
    t.rows.push_back({std::to_string(i), s, d.twist_label, d.elliptic ? "yes" : "no", d.out_order.get_str(),
                      iv.is_null() ? "n/a" : iv.get<std::string>(), d.describe()});
  }
  json doc{{"schema_version", kSchemaVersion}, {"group", group}, {"bound", bound}, {"data", rows}};
  render_generic(doc, t, {"group " + group + ", " + std::to_string(data.size()) + " elliptic classes"}, g.format);
  return ok;
}

int run_fourier(const std::string& file, int lifts, const Globals& g) {
  auto params = parse_parameters(read_file(file));
  std::mt19937_64 rng(g.seed);
  json rows = json::array();
  Table t{{"label", "ambient", "alpha", "alpha_zero", "fourier", "k_order", "consistent"}, {}};
  bool all = true;
  for (const auto& c : params) {
    IntVector alpha = kottwitz_invariant(c);
    bool stable = true;
    for (int i = 0; i < lifts; ++i) stable = stable && kottwitz_invariant(c, &rng) == alpha;
    const bool zero = kottwitz_invariant_is_zero(c);
    Int sum = fourier_sum(c, c.sign);
    Int korder = c.ambient->k.k_group().order();
    const bool consistent = stable && (zero ? sum == c.sign * korder : sum == 0);
    all = all && consistent;
    rows.push_back({{"label", c.label},
                    {"ambient", c.ambient->name},
                    {"alpha", to_string(alpha)},
                    {"alpha_zero", zero},
                    {"fourier_sum", sum.get_str()},
                    {"k_order", korder.get_str()},
                    {"lift_independent", stable},
                    {"consistent", consistent}});
    t.rows.push_back({c.label, c.ambient->name, to_string(alpha), zero ? "yes" : "no", sum.get_str(), korder.get_str(),
                      consistent ? "yes" : "no"});
  }
  json doc{{"schema_version", kSchemaVersion}, {"fixtures", file}, {"lifts", lifts}, {"parameters", rows}, {"consistent", all}};
  render_generic(doc, t, {std::to_string(params.size()) + " parameters, " + (all ? "all consistent" : "INCONSISTENT")},
                 g.format);
  return all ? ok : mismatch;
}

struct AdlvArgs {
  long p = 2;
  int n = 1;
  std::string b;
  std::vector<long> mu{1, 0};
  bool lattices = false;
  bool orbital = false;
  bool list = false;
};

int run_adlv(const AdlvArgs& a, const Globals& g) {
  auto ctx = make_padic_context(a.p, a.n, g.precision);
  PadicMatrix b = parse_padic_matrix(ctx, a.b);
  if (b.rows() != a.mu.size()) throw std::invalid_argument("mu must have one entry per row of b");
  auto inv = isocrystal_invariants(b);
  auto t0 = std::chrono::steady_clock::now();
  AdlvReport rep = adlv_points(b, a.mu, g.depth, !a.lattices, g.cap);
  json newton = json::array();
  std::string newton_text;
  for (const auto& s : inv.newton) {
    newton.push_back(rat(s));
    newton_text += (newton_text.empty() ? "" : " ") + rat(s);
  }
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["request"] = {{"p", a.p}, {"n", a.n}, {"d", b.rows()}, {"b", a.b}, {"mu", a.mu}, {"depth", g.depth},
                    {"modulo_homothety", !a.lattices}};
  doc["invariants"] = {{"newton", newton}, {"kappa", inv.kappa}};
  doc["points"] = rep.points.size();
  doc["depth_used"] = rep.depth_used;
  doc["saturated"] = rep.saturated;
  doc["count_next_depth"] = rep.count_next_depth;
  doc["frobenius_stable"] = rep.frobenius_stable;
  std::vector<std::string> summary{"newton (" + newton_text + ") kappa " + std::to_string(inv.kappa),
                                   "points " + std::to_string(rep.points.size()) + " at depth " +
                                       std::to_string(rep.depth_used) + (rep.saturated ? " (saturated)" : " (not saturated)")};
  if (a.orbital) {
    TwistedOrbitalOptions o;
    o.depth = g.depth;
    o.cap = g.cap;
    auto to = twisted_orbital_integral(b, a.mu, o);
    doc["twisted_orbital_integral"] = {{"value", rat(to.value)}, {"finite", to.finite}, {"norm_type", to_string(to.norm_type)}};
    summary.push_back("twisted orbital integral " + rat(to.value) + " (" + to_string(to.norm_type) + ")");
  }
  doc["timings"] = {{"adlv", seconds_since(t0)}};
  Table t;
  if (a.list) {
    t.header = {"key", "shift", "exponents"};
    json pts = json::array();
    for (const auto& l : rep.points) {
      std::string e;
      for (auto x : l.exponents) e += (e.empty() ? "" : " ") + std::to_string(x);
      t.rows.push_back({l.key, std::to_string(l.shift), e});
      pts.push_back(l.key);
    }
    doc["lattices"] = pts;
  }
  render_generic(doc, t, summary, g.format);
  return ok;
}

int run_selftest(const Globals& g) {
  std::mt19937_64 rng(g.seed);
  std::vector<std::pair<std::string, bool>> checks;
  auto check = [&](const std::string& name, auto&& fn) {
    bool pass = false;
    try {
      pass = fn();
    } catch (const std::exception& e) {
      std::cerr << name << ": " << e.what() << "\n";
    }
    checks.push_back({name, pass});
  };
  check("k group of the GL_2 torus is trivial", [] { return presets::ambient_gl2()->k.k_group().order() == 1; });
  check("k group of the SL_2 torus has order 2", [] { return presets::ambient_sl2()->k.k_group().order() == 2; });
  check("SL_2 has two elliptic endoscopic classes", [] { return enumerate_elliptic_endoscopy(presets::sl(2), 4).size() == 2; });
  check("newton point is a sigma-conjugacy invariant", [&] {
    auto ctx = make_padic_context(3, 2, g.precision);
    auto b = parse_padic_matrix(ctx, "[[0, 3], [1, 0]]");
    std::uniform_int_distribution<long> coef(-4, 4);
    for (int i = 0; i < 20; ++i) {
      PadicMatrix u = PadicMatrix::identity(ctx, 2);
      for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < 2; ++c)
          if (r != c) u(r, c) = Padic::from_coefficients(ctx, 0, {Int(coef(rng)), Int(coef(rng))});
      auto c = sigma_conjugate(b, u);
      if (newton_point(c) != newton_point(b) || kottwitz_point(c) != kottwitz_point(b)) return false;
    }
    return true;
  });
  for (auto [p, m] : {std::pair{5L, 1}, std::pair{7L, 1}, std::pair{5L, 2}}) {
    CurveCountRequest r;
    r.p = p;
    r.m = m;
    r.N = 3;
    check("point-counting formula for p=" + std::to_string(p) + " m=" + std::to_string(m) + " N=3", [&] {
      RhsOptions o;
      o.jobs = g.jobs;
      return compare(r, o).match;
    });
  }
  check("corrupted normalization is detected", [&] {
    CurveCountRequest r;
    r.p = 7;
    r.m = 1;
    r.N = 3;
    RhsOptions o;
    o.corrupt_normalization = true;
    return !compare(r, o).match;
  });
  bool all = true;
  json rows = json::array();
  Table t{{"result", "check"}, {}};
  for (const auto& [name, pass] : checks) {
    all = all && pass;
    rows.push_back({{"check", name}, {"pass", pass}});
    t.rows.push_back({pass ? "PASS" : "FAIL", name});
  }
  json doc{{"schema_version", kSchemaVersion}, {"seed", g.seed}, {"checks", rows}, {"pass", all}};
  render_generic(doc, t, {}, g.format);
  return all ? ok : mismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kottwitz point-counting laboratory"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.set_config("--config", "", "key=value file with defaults for the global options");
  app.add_option("--precision", g.precision, "p-adic relative precision (0 = maximal)");
  app.add_option("--depth", g.depth, "lattice search depth")->capture_default_str();
  app.add_option("--cap", g.cap, "enumeration cap")->capture_default_str();
  app.add_option("--format", g.format, "output format")
      ->check(CLI::IsMember({"json", "csv", "text"}))
      ->capture_default_str();
  app.add_option("--seed", g.seed, "seed for randomized checks")->capture_default_str();
  app.add_option("--jobs", g.jobs, "worker threads")->envname("KLAB_JOBS")->check(CLI::Range(1u, 1024u));
  app.add_option("--cache-dir", g.cache_dir, "directory for memoized reports")->envname("KLAB_CACHE_DIR");
  app.add_flag("--no-cache", g.no_cache, "ignore the cache directory");

  std::string kg_file, kg_preset;
  auto* kgroup = app.add_subcommand("kgroup", "K group of a pair of Galois lattices");
  auto* kg_src = kgroup->add_option("--file", kg_file, "problem in the kgroup text format ('-' for stdin)");
  kgroup->add_option("--preset", kg_preset, "ambient preset such as gl2-inert or sl2-split")->excludes(kg_src);
  kgroup->require_option(1);

  std::string en_group = "SL2";
  std::size_t en_bound = 4;
  auto* endo = app.add_subcommand("endoscopy", "elliptic endoscopic data of a preset group");
  endo->add_option("--group", en_group, "SL2, GL2, PGL2, GSp4, ...")->capture_default_str();
  endo->add_option("--bound", en_bound, "torsion bound for s")->capture_default_str();

  std::string fo_file;
  int fo_lifts = 0;
  auto* fourier = app.add_subcommand("fourier", "Fourier sums over Kottwitz parameter fixtures");
  fourier->add_option("--fixtures", fo_file, "parameter file")->required();
  fourier->add_option("--lifts", fo_lifts, "random lift choices per parameter")->capture_default_str();

  AdlvArgs ad;
  auto* adlv = app.add_subcommand("adlv", "lattice points of an affine Deligne-Lusztig set");
  adlv->add_option("--p", ad.p)->required();
  adlv->add_option("--n", ad.n, "degree of the unramified extension")->capture_default_str();
  adlv->add_option("--b", ad.b, "matrix literal such as [[0, p^1], [1, 0]]")->required();
  adlv->add_option("--mu", ad.mu, "coweight, comma separated")->delimiter(',')->capture_default_str();
  adlv->add_flag("--lattices", ad.lattices, "count lattices instead of homothety classes");
  adlv->add_flag("--orbital", ad.orbital, "also compute the twisted orbital integral");
  adlv->add_flag("--list", ad.list, "list the lattices found");

  CurveArgs count_args, rhs_args, cmp_args;
  auto* count = app.add_subcommand("count", "brute-force point count of Y(N) or Y1(N)");
  count_args.add_to(count, false, true);
  auto* rhs = app.add_subcommand("rhs", "assemble the point-counting formula");
  rhs_args.add_to(rhs, true, false);
  auto* cmp = app.add_subcommand("compare", "compare the formula with the brute-force count");
  cmp_args.add_to(cmp, true, false);
  auto* selftest = app.add_subcommand("selftest", "quick end-to-end checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return usage;
  }

  try {
    if (kgroup->parsed()) return run_kgroup(kg_file, kg_preset, g);
    if (endo->parsed()) return run_endoscopy(en_group, en_bound, g);
    if (fourier->parsed()) return run_fourier(fo_file, fo_lifts, g);
    if (adlv->parsed()) return run_adlv(ad, g);
    if (count->parsed()) return run_count(count_args, g);
    if (rhs->parsed()) return run_pcf(rhs_args, g, false);
    if (cmp->parsed()) return run_pcf(cmp_args, g, true);
    if (selftest->parsed()) return run_selftest(g);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return usage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return guard;
  }
  return usage;
}

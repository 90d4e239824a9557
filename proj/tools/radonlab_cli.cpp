// radonlab_cli: report drivers over the radonlab modules.
//
// Every subcommand writes its report(s) plus manifest.json into --out
// (default: $RADONLAB_OUTPUT_DIR, else the working directory). Exit codes:
// 0 ok, 2 usage, 3 budget, 4 numeric, 1 anything else.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include "radonlab/radonlab.hpp"

namespace fs = std::filesystem;
using namespace radonlab;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "radonlab 0.1.0";

enum Exit { kOk = 0, kFailure = 1, kUsage = 2, kBudget = 3, kNumeric = 4 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::uint64_t seed = 0;
  std::string out_dir;
  double lattice_cap = default_budget().lattice_points;
  double summand_cap = default_budget().summands;
  double support_cap = default_budget().support;
  double tol = 1e-10;

  Budget budget() const {
    Budget b = default_budget();
    b.lattice_points = lattice_cap;
    b.summands = summand_cap;
    b.support = support_cap;
    return b;
  }
};

// Collects the command's inputs, hashes them, and writes outputs plus the manifest.
class Run {
 public:
  Run(std::string command, const RunConfig& cfg) : command_(std::move(command)), cfg_(cfg) {}

  json& inputs() { return inputs_; }

  std::string hash() const { return hex64(fnv1a64(config_json().dump())); }

  fs::path path(const std::string& name) {
    outputs_.push_back(name);
    return fs::path(cfg_.out_dir) / name;
  }

  std::ofstream open(const std::string& name) {
    const auto p = path(name);
    std::ofstream os(p, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + p.string() + " for writing");
    return os;
  }

  void finish(const json& summary) {
    json m = config_json();
    m["version"] = kVersion;
    m["config_hash"] = hash();
    m["outputs"] = outputs_;
    m["summary"] = summary;
    std::ofstream os(fs::path(cfg_.out_dir) / "manifest.json", std::ios::binary);
    os << m.dump(2) << '\n';
  }

 private:
  json config_json() const {
    return {{"command", command_},
            {"inputs", inputs_},
            {"seed", cfg_.seed},
            {"budgets",
             {{"lattice_points", cfg_.lattice_cap}, {"summands", cfg_.summand_cap}, {"support", cfg_.support_cap}}},
            {"tolerance", cfg_.tol}};
  }

  std::string command_;
  const RunConfig& cfg_;
  json inputs_ = json::object();
  std::vector<std::string> outputs_;
};

void comment_header(CsvWriter& csv, Run& run, const RunConfig& cfg) {
  csv.comment("config_hash", run.hash());
  csv.comment("seed", std::to_string(cfg.seed));
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, sep);)
    if (!item.empty()) out.push_back(item);
  return out;
}

Rational parse_rational(const std::string& s) {
  const auto slash = s.find('/');
  try {
    std::size_t used = 0;
    const std::string num = s.substr(0, slash);
    const BigInt p(num);
    if (slash == std::string::npos) return Rational(p);
    const std::string den = s.substr(slash + 1);
    const long long q = std::stoll(den, &used);
    if (used != den.size() || q == 0) throw std::invalid_argument(s);
    return Rational(p, BigInt(q));
  } catch (const std::exception&) {
    throw UsageError("invalid rational '" + s + "'");
  }
}

std::vector<Rational> parse_rationals(const std::string& s) {
  std::vector<Rational> out;
  for (const auto& item : split(s, ',')) out.push_back(parse_rational(item));
  return out;
}

MultiIndexSet gamma_from(const std::string& spec, int k, int deg) {
  try {
    if (!spec.empty()) return parse_gamma_spec(spec);
    return parse_gamma_spec("k=" + std::to_string(k) + ";deg<=" + std::to_string(deg));
  } catch (const PreconditionError& e) {
    throw UsageError(e.what());
  }
}

ConvexBody body_from(const std::string& kind, std::size_t k, const std::string& params) {
  try {
    std::vector<double> p;
    for (const auto& item : split(params, ',')) p.push_back(std::stod(item));
    if (kind == "ball") return ConvexBody::ball(k, p.empty() ? 1.0 : p[0]);
    if (kind == "cube") return ConvexBody::cube(k, p.empty() ? 0.5 / std::sqrt(static_cast<double>(k)) : p[0]);
    if (kind == "ellipsoid") {
      if (p.size() != k) throw UsageError("ellipsoid needs one semi-axis per dimension");
      return ConvexBody::ellipsoid(p);
    }
  } catch (const PreconditionError& e) {
    throw UsageError(e.what());
  } catch (const std::logic_error&) {
    throw UsageError("invalid body parameters '" + params + "'");
  }
  throw UsageError("unknown body '" + kind + "'");
}

LatticeFunction read_function(const std::string& file) {
  std::ifstream is(file);
  if (!is) throw UsageError("cannot read " + file);
  try {
    return read_text(is);
  } catch (const PreconditionError& e) {
    throw UsageError(file + ": " + e.what());
  }
}

// Lines "t x_1 ... x_d re im"; sites missing at some t take the value 0 there.
PathField read_path_field(const std::string& file) {
  std::ifstream is(file);
  if (!is) throw UsageError("cannot read " + file);
  std::map<double, std::map<Site, Complex>> slices;
  std::set<Site> sites;
  std::string line;
  std::size_t lineno = 0, dim = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos || line[pos] == '#') continue;
    std::istringstream ls(line);
    std::vector<std::string> f;
    for (std::string tok; ls >> tok;) f.push_back(tok);
    const auto where = file + " line " + std::to_string(lineno);
    if (f.size() < 4) throw UsageError(where + ": expected 't x_1 ... x_d re im'");
    if (dim == 0) dim = f.size() - 3;
    if (f.size() - 3 != dim) throw UsageError(where + ": dimension mismatch");
    try {
      Site x(dim);
      for (std::size_t i = 0; i < dim; ++i) x[i] = std::stoll(f[1 + i]);
      slices[std::stod(f[0])][x] += Complex(std::stod(f[dim + 1]), std::stod(f[dim + 2]));
      sites.insert(x);
    } catch (const std::logic_error&) {
      throw UsageError(where + ": malformed number");
    }
  }
  if (slices.empty()) throw UsageError(file + ": no data");
  std::vector<double> times;
  for (const auto& [t, s] : slices) times.push_back(t);
  std::vector<std::vector<std::int64_t>> site_list(sites.begin(), sites.end());
  std::vector<std::vector<Complex>> values;
  for (const auto& x : site_list) {
    std::vector<Complex> row;
    for (const auto& [t, s] : slices) {
      auto it = s.find(x);
      row.push_back(it == s.end() ? Complex(0.0) : it->second);
    }
    values.push_back(std::move(row));
  }
  return PathField(times, site_list, std::move(values));
}

std::string join_ints(const std::vector<std::int64_t>& v, char sep = ' ') {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? std::string(1, sep) : "") + std::to_string(v[i]);
  return s;
}

// ---------------------------------------------------------------------------

struct GaussOpts {
  int k = 1, deg = 2;
  std::string gamma;
  std::int64_t qmin = 2, qmax = 0;
};

int cmd_gauss_scan(const GaussOpts& o, const RunConfig& cfg) {
  const auto gamma = gamma_from(o.gamma, o.k, o.deg);
  if (o.qmax < o.qmin || o.qmin < 1) throw UsageError("need 1 <= --qmin <= --qmax");
  Run run("gauss-scan", cfg);
  run.inputs() = {{"gamma", gamma.str()}, {"qmin", o.qmin}, {"qmax", o.qmax}};
  const auto scan = gauss_decay_scan(gamma, o.qmax, o.qmin, cfg.budget());
  auto os = run.open("gauss_scan.csv");
  CsvWriter csv(os, {"q", "max_abs", "argmax"});
  for (const auto& r : scan.rows) csv.row({std::to_string(r.q), fmt(r.max_abs), join_ints(r.argmax)});
  comment_header(csv, run, cfg);
  csv.comment("exponent", fmt(scan.exponent));
  csv.comment("fit_range", std::to_string(scan.fit_lo) + ".." + std::to_string(scan.fit_hi));
  csv.comment("fit_points", std::to_string(scan.fit_points));
  std::cout << "gauss-scan: " << scan.rows.size() << " rows, fitted exponent " << fmt(scan.exponent) << '\n';
  run.finish({{"rows", scan.rows.size()}, {"exponent", fmt(scan.exponent)}});
  return kOk;
}

struct IwOpts {
  std::int64_t N = 0;
  double rho = 1.0;
  bool partition = true;
};

int cmd_iw_build(const IwOpts& o, const RunConfig& cfg) {
  if (o.N < 1) throw UsageError("--N must be >= 1");
  if (!(o.rho > 0.0 && o.rho < 2.0)) throw UsageError("--rho must lie in (0, 2)");
  Run run("iw-build", cfg);
  run.inputs() = {{"N", o.N}, {"rho", o.rho}, {"partition", o.partition}};
  const auto set = build_denominator_set(o.N, o.rho, cfg.budget());
  const auto audit = audit_denominator_set(set);
  json j = to_json(set);
  j["config_hash"] = run.hash();
  j["audit"] = {{"contains_first_n", audit.contains_first_n}, {"below_sandwich_bound", audit.below_sandwich_bound},
                {"lcm_matches", audit.lcm_matches},           {"lcm_below_3N", audit.lcm_below_3N},
                {"witnesses_valid", audit.witnesses_valid}};
  run.open("denominator_set.json") << j.dump(2) << '\n';
  json summary = {{"members", set.size()}, {"Q0", set.Q0().str()}};
  if (o.partition && o.N >= 2) {
    const auto res = partition_property_O(o.N, o.rho, cfg.seed);
    const auto pa = audit_partition(res);
    json pj = to_json(res);
    pj["config_hash"] = run.hash();
    pj["seed"] = cfg.seed;
    pj["audit"] = {{"exact_cover", pa.exact_cover},
                   {"witnesses_valid", pa.witnesses_valid},
                   {"part_count", pa.part_count},
                   {"element_count", pa.element_count}};
    run.open("partition.json") << pj.dump(2) << '\n';
    summary["parts"] = pa.part_count;
    summary["exact_cover"] = pa.exact_cover;
    std::cout << "iw-build: " << set.size() << " denominators, " << pa.part_count << " parts, exact cover "
              << (pa.exact_cover ? "yes" : "no") << '\n';
  } else {
    std::cout << "iw-build: " << set.size() << " denominators\n";
  }
  run.finish(summary);
  return kOk;
}

struct WeylOpts {
  int deg = 2;
  std::int64_t a = 1, q = 0;
  std::vector<std::int64_t> Ns;
  double eps = 0.05;
};

int cmd_weyl_verify(const WeylOpts& o, const RunConfig& cfg) {
  if (o.deg < 2) throw UsageError("--deg must be >= 2");
  if (o.q < 1 || std::gcd(o.a, o.q) != 1) throw UsageError("need --q >= 1 and gcd(--a, --q) = 1");
  if (o.Ns.empty()) throw UsageError("--N needs at least one value");
  for (auto N : o.Ns)
    if (N < 2) throw UsageError("--N values must be >= 2");
  Run run("weyl-verify", cfg);
  run.inputs() = {{"deg", o.deg}, {"a", o.a}, {"q", o.q}, {"N", o.Ns}, {"eps", o.eps}};
  // Leading coefficient a/q; lower coefficients drawn from the seed.
  std::mt19937_64 rng(cfg.seed);
  std::uniform_int_distribution<std::int64_t> num(-50, 50), den(1, 50);
  IntegerPolynomial P(1);
  P.add_term({o.deg}, Rational(o.a, o.q));
  for (int e = 1; e < o.deg; ++e) P.add_term({e}, Rational(num(rng), den(rng)));
  auto os = run.open("weyl_verify.csv");
  CsvWriter csv(os, {"N", "sum_modulus", "kappa", "weyl_bound", "weyl_ratio", "interval_sum", "log_loss_shape",
                     "log_loss_ratio"});
  double worst = 0.0;
  for (auto N : o.Ns) {
    const auto w = weyl_bound_report(P, ConvexBody::ball(1), static_cast<double>(N), MultiIndex{o.deg}, o.a, o.q, o.eps);
    const auto l = wooley_report(P, N, o.a, o.q);
    worst = std::max(worst, l.ratio);
    csv.row({std::to_string(N), fmt(w.sum_modulus), fmt(w.kappa), fmt(w.bound), fmt(w.ratio), fmt(l.sum_modulus),
             fmt(l.shape), fmt(l.ratio)});
  }
  comment_header(csv, run, cfg);
  csv.comment("polynomial", P.str());
  csv.comment("max_log_loss_ratio", fmt(worst));
  std::cout << "weyl-verify: P = " << P.str() << ", max ratio " << fmt(worst) << '\n';
  run.finish({{"polynomial", P.str()}, {"max_log_loss_ratio", fmt(worst)}});
  return kOk;
}

struct JumpOpts {
  std::string input;
  double p = 2.0, r = 2.0;
};

int cmd_jumps(const JumpOpts& o, const RunConfig& cfg) {
  if (o.input.empty()) throw UsageError("--input is required");
  if (!(o.p > 1.0) || !(o.r >= 1.0)) throw UsageError("need --p > 1 and --r >= 1");
  const auto field = read_path_field(o.input);
  Run run("jumps", cfg);
  run.inputs() = {{"input", fs::path(o.input).filename().string()}, {"p", o.p}, {"r", o.r}};
  const auto J = jump_seminorm_detail(field, o.p);
  auto os = run.open("jumps.csv");
  CsvWriter csv(os, {"site", "r_variation"});
  for (std::size_t i = 0; i < field.size(); ++i)
    csv.row({join_ints(field.sites()[i]), fmt(r_variation(field.paths()[i], o.r))});
  comment_header(csv, run, cfg);
  csv.comment("jump_seminorm", fmt(J.value));
  csv.comment("argmax_lambda", fmt(J.argmax));
  std::cout << "jumps: " << field.size() << " sites, J = " << fmt(J.value) << '\n';
  run.finish({{"sites", field.size()}, {"jump_seminorm", fmt(J.value)}});
  return kOk;
}

struct RadonOpts {
  int k = 1, deg = 2;
  std::string flavor = "avg", gamma, body = "ball", body_params, kernel, input;
  double t = 0.0;
  std::int64_t torus = 0;
};

Flavor flavor_from(const std::string& s) {
  if (s == "avg" || s == "averaging") return Flavor::Averaging;
  if (s == "sing" || s == "singular") return Flavor::Singular;
  throw UsageError("unknown flavor '" + s + "'");
}

int cmd_radon_apply(const RadonOpts& o, const RunConfig& cfg) {
  const Flavor fl = flavor_from(o.flavor);
  const auto gamma = gamma_from(o.gamma, o.k, o.deg);
  const auto body = body_from(o.body, gamma.k(), o.body_params);
  if (o.input.empty()) throw UsageError("--input is required");
  if (!(o.t >= 0.0)) throw UsageError("--t must be >= 0");
  const auto f = read_function(o.input);
  if (f.dim() != gamma.size())
    throw UsageError("input dimension " + std::to_string(f.dim()) + " differs from |Gamma| = " +
                     std::to_string(gamma.size()));
  CZKernelSpec cz;
  if (fl == Flavor::Singular) {
    try {
      cz = cz_kernel_by_id(o.kernel.empty() ? (gamma.k() == 1 ? "hilbert" : "quadrupole") : o.kernel);
    } catch (const PreconditionError& e) {
      throw UsageError(e.what());
    }
    if (cz.k != gamma.k()) throw UsageError("kernel '" + cz.id + "' has the wrong dimension");
  }
  Run run("radon-apply", cfg);
  run.inputs() = {{"flavor", to_string(fl)},
                  {"gamma", gamma.str()},
                  {"body", body.describe()},
                  {"kernel", fl == Flavor::Singular ? cz.id : ""},
                  {"t", o.t},
                  {"torus", o.torus},
                  {"input", fs::path(o.input).filename().string()}};
  const auto K = radon_kernel(fl, body, o.t, gamma, fl == Flavor::Singular ? &cz : nullptr, cfg.lattice_cap);
  json summary = {{"kernel_size", K.size()}};
  if (o.torus > 0) {
    const auto res = apply_on_torus(K, TorusFunction::periodize(f, std::vector<std::int64_t>(f.dim(), o.torus)));
    auto os = run.open("output_torus.txt");
    os << "# config_hash=" << run.hash() << '\n';
    Complex mass = 0.0;
    for (std::size_t i = 0; i < res.g.size(); ++i) {
      const Complex v = res.g.values()[i];
      mass += v;
      if (std::abs(v) <= 1e-15) continue;
      for (auto c : res.g.site(i)) os << c << ' ';
      os << format_real(v.real()) << ' ' << format_real(v.imag()) << '\n';
    }
    summary["wraparound_risk"] = res.wraparound_risk;
    summary["mass"] = {format_real(mass.real()), format_real(mass.imag())};
    if (res.wraparound_risk) std::cerr << "warning: torus side is within 4x the kernel radius\n";
    std::cout << "radon-apply: torus output, mass " << format_real(mass.real()) << '\n';
  } else {
    const auto g = apply(K, f, cfg.support_cap);
    run.open("output.txt") << "# config_hash=" << run.hash() << '\n' << to_text(g);
    const Complex mass = g.sum();
    summary["support"] = g.size();
    summary["mass"] = {format_real(mass.real()), format_real(mass.imag())};
    std::cout << "radon-apply: " << g.size() << " sites, mass " << format_real(mass.real()) << '\n';
  }
  run.finish(summary);
  return kOk;
}

struct MajorArcOpts {
  int k = 1, deg = 2;
  std::string flavor = "avg", gamma, body = "ball", body_params, kernel, a, theta;
  std::int64_t q = 1;
  std::vector<std::int64_t> Ns;
};

int cmd_major_arc(const MajorArcOpts& o, const RunConfig& cfg) {
  const Flavor fl = flavor_from(o.flavor);
  const auto gamma = gamma_from(o.gamma, o.k, o.deg);
  const auto body = body_from(o.body, gamma.k(), o.body_params);
  RationalPoint aq;
  aq.q = o.q;
  for (const auto& s : split(o.a, ',')) {
    try {
      aq.a.push_back(std::stoll(s));
    } catch (const std::logic_error&) {
      throw UsageError("invalid --a entry '" + s + "'");
    }
  }
  if (aq.a.empty()) aq.a.assign(gamma.size(), 0);
  if (aq.a.size() != gamma.size() || o.q < 1 || !aq.is_reduced())
    throw UsageError("--a needs |Gamma| entries with gcd(q, a) = 1");
  auto theta = o.theta.empty() ? std::vector<Rational>(gamma.size(), Rational(0)) : parse_rationals(o.theta);
  if (theta.size() != gamma.size()) throw UsageError("--theta needs |Gamma| entries");
  if (o.Ns.empty()) throw UsageError("--N needs at least one value");
  CZKernelSpec cz;
  if (fl == Flavor::Singular) {
    try {
      cz = cz_kernel_by_id(o.kernel.empty() ? (gamma.k() == 1 ? "hilbert" : "quadrupole") : o.kernel);
    } catch (const PreconditionError& e) {
      throw UsageError(e.what());
    }
  }
  Run run("major-arc", cfg);
  json th = json::array();
  for (const auto& v : theta) th.push_back(v.str());
  run.inputs() = {{"flavor", to_string(fl)}, {"gamma", gamma.str()}, {"body", body.describe()},
                  {"a", aq.a},               {"q", o.q},              {"theta", th},
                  {"N", o.Ns},               {"kernel", fl == Flavor::Singular ? cz.id : ""}};
  auto os = run.open("major_arc.csv");
  CsvWriter csv(os, {"N", "error", "q_term", "holder_term", "quasi_term", "ratio", "ratio_q", "grid", "grid_points"});
  double worst = 0.0;
  for (auto N : o.Ns) {
    const auto rep = major_arc_error(fl, body, gamma, N, aq, theta, fl == Flavor::Singular ? &cz : nullptr,
                                     std::max(cfg.tol, 1e-13));
    worst = std::max(worst, rep.ratio);
    csv.row({std::to_string(N), fmt(rep.error), fmt(rep.q_term), fmt(rep.holder_term), fmt(rep.quasi_term),
             fmt(rep.ratio), fmt(rep.ratio_q), rep.grid, std::to_string(rep.grid_points)});
  }
  comment_header(csv, run, cfg);
  csv.comment("max_ratio", fmt(worst));
  std::cout << "major-arc: max ratio " << fmt(worst) << '\n';
  run.finish({{"max_ratio", fmt(worst)}});
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"radonlab: discrete Radon operators, exponential sums and denominator sets"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  if (const char* env = std::getenv("RADONLAB_OUTPUT_DIR")) cfg.out_dir = env;
  app.add_option("--out", cfg.out_dir, "Output directory (default $RADONLAB_OUTPUT_DIR or .)");
  app.add_option("--seed", cfg.seed, "Random seed recorded in every report");
  app.add_option("--lattice-cap", cfg.lattice_cap, "Max lattice points per enumeration")->check(CLI::PositiveNumber);
  app.add_option("--summand-cap", cfg.summand_cap, "Max summands per complete sum")->check(CLI::PositiveNumber);
  app.add_option("--support-cap", cfg.support_cap, "Max sparse convolution work")->check(CLI::PositiveNumber);
  app.add_option("--tol", cfg.tol, "Quadrature tolerance")->check(CLI::PositiveNumber);

  GaussOpts go;
  auto* gauss = app.add_subcommand("gauss-scan", "max_a |G(a/q)| for q in [qmin, qmax] and fitted exponent");
  gauss->add_option("--k", go.k, "Dimension for the full-degree index set")->check(CLI::PositiveNumber);
  gauss->add_option("--deg", go.deg, "Degree for the full-degree index set")->check(CLI::PositiveNumber);
  gauss->add_option("--gamma", go.gamma, "Index set spec, e.g. 'k=1;deg<=2' or '1,0;0,2' (overrides --k/--deg)");
  gauss->add_option("--qmin", go.qmin, "Smallest denominator");
  gauss->add_option("--qmax", go.qmax, "Largest denominator")->required();

  IwOpts io;
  bool no_partition = false;
  auto* iw = app.add_subcommand("iw-build", "Denominator set, audit and prime-product partition");
  iw->add_option("--N", io.N, "Size parameter")->required();
  iw->add_option("--rho", io.rho, "Exponent rho in (0, 2)");
  iw->add_flag("--no-partition", no_partition, "Skip the partition construction");

  WeylOpts wo;
  auto* weyl = app.add_subcommand("weyl-verify", "Weyl sum bounds for a one-variable polynomial with leading a/q");
  weyl->add_option("--deg", wo.deg, "Degree");
  weyl->add_option("--a", wo.a, "Leading numerator");
  weyl->add_option("--q", wo.q, "Leading denominator")->required();
  weyl->add_option("--N", wo.Ns, "Lengths (repeatable or comma separated)")->required()->delimiter(',');
  weyl->add_option("--eps", wo.eps, "Exponent on kappa in the Weyl bound");

  JumpOpts jo;
  auto* jumps = app.add_subcommand("jumps", "Per-site r-variation and global jump seminorm of a path field");
  jumps->add_option("--input", jo.input, "File with lines 't x_1 ... x_d re im'")->required();
  jumps->add_option("--p", jo.p, "Outer exponent p > 1");
  jumps->add_option("--r", jo.r, "Variation exponent r >= 1");

  RadonOpts ro;
  auto* radon = app.add_subcommand("radon-apply", "Apply an averaging or singular Radon kernel to a lattice function");
  radon->add_option("--flavor", ro.flavor, "avg | sing");
  radon->add_option("--t", ro.t, "Scale (radius 2^t)")->required();
  radon->add_option("--gamma", ro.gamma, "Index set spec (overrides --k/--deg)");
  radon->add_option("--k", ro.k, "Dimension for the full-degree index set")->check(CLI::PositiveNumber);
  radon->add_option("--deg", ro.deg, "Degree for the full-degree index set")->check(CLI::PositiveNumber);
  radon->add_option("--body", ro.body, "ball | cube | ellipsoid");
  radon->add_option("--body-params", ro.body_params, "Radius, half side, or comma-separated semi-axes");
  radon->add_option("--kernel", ro.kernel, "hilbert | quadrupole | mixed");
  radon->add_option("--input", ro.input, "Lattice function file, lines 'x_1 ... x_d re im'")->required();
  radon->add_option("--torus", ro.torus, "Side length; use the FFT path on (Z/L)^d");

  MajorArcOpts mo;
  auto* major = app.add_subcommand("major-arc", "Discrete multiplier against G(a/q) times the continuous symbol");
  major->add_option("--flavor", mo.flavor, "avg | sing");
  major->add_option("--gamma", mo.gamma, "Index set spec (overrides --k/--deg)");
  major->add_option("--k", mo.k, "Dimension for the full-degree index set")->check(CLI::PositiveNumber);
  major->add_option("--deg", mo.deg, "Degree for the full-degree index set")->check(CLI::PositiveNumber);
  major->add_option("--body", mo.body, "ball | cube | ellipsoid");
  major->add_option("--body-params", mo.body_params, "Radius, half side, or comma-separated semi-axes");
  major->add_option("--kernel", mo.kernel, "hilbert | quadrupole | mixed");
  major->add_option("--a", mo.a, "Numerators, comma separated");
  major->add_option("--q", mo.q, "Denominator");
  major->add_option("--theta", mo.theta, "Offsets as rationals, comma separated");
  major->add_option("--N", mo.Ns, "Scales (repeatable or comma separated)")->required()->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (cfg.out_dir.empty()) cfg.out_dir = ".";
    fs::create_directories(cfg.out_dir);
    if (gauss->parsed()) return cmd_gauss_scan(go, cfg);
    if (iw->parsed()) {
      io.partition = !no_partition;
      return cmd_iw_build(io, cfg);
    }
    if (weyl->parsed()) return cmd_weyl_verify(wo, cfg);
    if (jumps->parsed()) return cmd_jumps(jo, cfg);
    if (radon->parsed()) return cmd_radon_apply(ro, cfg);
    if (major->parsed()) return cmd_major_arc(mo, cfg);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const BudgetError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBudget;
  } catch (const OverflowError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBudget;
  } catch (const NumericError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumeric;
  } catch (const PreconditionError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kUsage;
}

#include "symconj/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "symconj/operators.hpp"
#include "symconj/quadrature.hpp"
#include "symconj/verifier.hpp"

namespace fs = std::filesystem;

namespace symconj {

FamilySpec RunConfig::validate() const {
  const FamilySpec fam = FamilySpec::parse(family, alpha, beta);
  if (dim < 1 || dim > 4) throw std::invalid_argument("--dim must be between 1 and 4");
  if (truncation < 1) throw std::invalid_argument("--trunc must be at least 1");
  if (threads < 1) throw std::invalid_argument("--threads must be at least 1");
  for (double v : t)
    if (!(v >= 0.0) || !std::isfinite(v)) throw std::invalid_argument("--t values must be finite and nonnegative");
  const int n = truncation + truncation % 2;
  const int q = quad_size();
  if (q % 2 != 0) throw std::invalid_argument("--quad must be even");
  if (q < minimum_rule_size(n))
    throw std::invalid_argument("--quad " + std::to_string(q) + " is below 2N+16 = " + std::to_string(minimum_rule_size(n)));
  return fam;
}

int RunConfig::quad_size() const { return quad > 0 ? quad : default_rule_size(truncation + truncation % 2); }

namespace {

std::ofstream open_output(const fs::path& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  return os;
}

void write_manifest(const fs::path& dir, const RunConfig& cfg, const FamilySpec& fam, const std::string& command,
                    const std::vector<std::string>& files) {
  std::ofstream os = open_output(dir / "manifest.txt");
  os << "command=" << command << '\n'
     << "family=" << fam.name() << '\n'
     << "dim=" << cfg.dim << '\n'
     << "trunc=" << cfg.truncation << '\n'
     << "quad=" << cfg.quad_size() << '\n'
     << "seed=" << cfg.seed << '\n';
  for (const auto& f : files) os << "file=" << f << '\n';
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  os << "timestamp=" << std::put_time(std::gmtime(&now), "%Y-%m-%dT%H:%M:%SZ") << '\n';
}

int cmd_basis(const RunConfig& cfg, bool psi, std::ostream& out) {
  const FamilySpec fam = cfg.validate();
  const SymmetrizedBasis basis(fam);
  const QuadratureRule rule = build_rule(fam, cfg.quad_size());
  const fs::path dir(cfg.out);
  fs::create_directories(dir);
  std::vector<std::string> files;
  const int n_max = cfg.truncation;
  for (int n = 0; n <= n_max; ++n) {
    const GridFunction g = GridFunction::sample(rule, 1, [&](std::span<const double> x) { return basis.eval_Phi(n, x[0]); });
    const std::string name = "phi_" + std::to_string(n) + ".csv";
    std::ofstream os = open_output(dir / name);
    g.write_csv(os);
    files.push_back(name);
  }
  if (psi) {
    for (int n = -n_max / 2; n <= n_max / 2; ++n) {
      const std::string name = "psi_" + std::to_string(n) + ".csv";
      std::ofstream os = open_output(dir / name);
      os << "x1,re,im\n";
      for (double x : rule.nodes()) {
        const std::complex<double> v = basis.eval_Psi(n, x);
        os << format_double(x) << ',' << format_double(v.real()) << ',' << format_double(v.imag()) << '\n';
      }
      files.push_back(name);
    }
  }
  write_manifest(dir, cfg, fam, "basis", files);
  out << "wrote " << files.size() << " basis files to " << dir.string() << '\n';
  return kExitOk;
}

std::vector<int> parse_ints(const std::vector<std::string>& words, std::size_t from, std::size_t count, const char* what) {
  if (words.size() != from + count)
    throw std::invalid_argument(std::string(what) + " expects " + std::to_string(count) + " integer argument(s)");
  std::vector<int> v;
  for (std::size_t i = from; i < words.size(); ++i) {
    std::size_t used = 0;
    const int x = std::stoi(words[i], &used);
    if (used != words[i].size() || x < 0) throw std::invalid_argument(std::string(what) + ": bad index '" + words[i] + "'");
    v.push_back(x);
  }
  return v;
}

double parse_real(const std::string& s, const char* what) {
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw std::invalid_argument(std::string(what) + ": bad number '" + s + "'");
  return v;
}

void write_coefficients(std::ostream& os, const Box& box, const CoeffVector& in, const CoeffVector& res, const char* index) {
  for (int j = 0; j < box.dim(); ++j) os << index << (j + 1) << ',';
  os << "input,output\n";
  for (std::size_t i = 0; i < box.size(); ++i) {
    for (int j = 0; j < box.dim(); ++j) os << box.component(i, j) << ',';
    os << format_double(in[i]) << ',' << format_double(res[i]) << '\n';
  }
}

int cmd_transform(const RunConfig& cfg, const std::string& input, const std::vector<std::string>& op, std::ostream& out) {
  const FamilySpec fam = cfg.validate();
  if (op.empty()) throw std::invalid_argument("missing operation: riesz l.. | poisson t | conjugate j t | dpow n..");
  const OperatorEngine engine(fam, cfg.dim, cfg.truncation);
  const QuadratureRule rule = build_rule(fam, cfg.quad_size());
  const SpectralGrid grid(engine.basis(), rule, cfg.dim, engine.truncation());
  std::ifstream is(input);
  if (!is) throw std::invalid_argument("cannot read input " + input);
  const GridFunction f = GridFunction::read_csv(is, rule, cfg.dim);

  const fs::path dir(cfg.out);
  fs::create_directories(dir);
  const std::string& name = op[0];
  const auto d = static_cast<std::size_t>(cfg.dim);

  if (name == "dpow") {
    const MultiIndex n(parse_ints(op, 1, d, "dpow"));
    // φ-coefficients of f restricted to the positive orthant: φ_k = √2 Φ_2k there.
    GridFunction pos = f;
    for (std::size_t i = 0; i < pos.size(); ++i)
      for (double x : pos.point(i))
        if (x < 0.0) pos[i] = 0.0;
    const CoeffVector c = grid.analyze(pos);
    const double scale = std::pow(std::numbers::sqrt2, cfg.dim);
    CoeffVector phi(fam, engine.initial_box());
    for (std::size_t i = 0; i < phi.size(); ++i) {
      MultiIndex k = engine.initial_box().unflatten(i);
      for (std::size_t j = 0; j < d; ++j) k[static_cast<int>(j)] *= 2;
      phi[i] = scale * c.at(k);
    }
    const InitialExpansion res = engine.projected_derivative(n, phi);
    // Back to Φ coefficients for sampling, then keep the positive orthant.
    CoeffVector big = engine.zeros();
    for (std::size_t i = 0; i < phi.size(); ++i) {
      MultiIndex k = engine.initial_box().unflatten(i);
      bool valid = true;
      for (std::size_t j = 0; j < d; ++j) {
        const int jj = static_cast<int>(j);
        k[jj] = 2 * k[jj] - res.parity[j];
        valid = valid && k[jj] >= 0;
      }
      if (valid) big.at(k) = scale * res.coeffs[i];
    }
    const GridFunction g = grid.synthesize(big);
    std::ofstream os = open_output(dir / "transform.csv");
    for (std::size_t j = 0; j < d; ++j) os << 'x' << (j + 1) << ',';
    os << "value\n";
    for (std::size_t i = 0; i < g.size(); ++i) {
      const std::vector<double> x = g.point(i);
      bool positive = true;
      for (double v : x) positive = positive && v > 0.0;
      if (!positive) continue;
      for (double v : x) os << format_double(v) << ',';
      os << format_double(g[i]) << '\n';
    }
    std::ofstream cs = open_output(dir / "coefficients.csv");
    cs << "# parity";
    for (int p : res.parity) cs << ' ' << p;
    cs << '\n';
    write_coefficients(cs, engine.initial_box(), phi, res.coeffs, "k");
    out << "dpow " << n.str() << ": wrote transform.csv (positive orthant) and coefficients.csv\n";
    return kExitOk;
  }

  const CoeffVector c = engine.restrict_to_basis(grid.analyze(f));
  CoeffVector res = engine.zeros();
  if (name == "riesz") {
    const MultiIndex l(parse_ints(op, 1, d, "riesz"));
    res = engine.riesz(l, c);
  } else if (name == "poisson") {
    if (op.size() != 2) throw std::invalid_argument("poisson expects one argument t");
    res = engine.poisson(parse_real(op[1], "poisson"), c);
  } else if (name == "conjugate") {
    if (op.size() != 3) throw std::invalid_argument("conjugate expects arguments j t");
    const int j = parse_ints({op[0], op[1]}, 1, 1, "conjugate j")[0];
    if (j < 1 || j > cfg.dim) throw std::invalid_argument("conjugate: axis j must be in 1..d");
    res = engine.conjugate_poisson(j - 1, parse_real(op[2], "conjugate"), c);
  } else {
    throw std::invalid_argument("unknown operation '" + name + "'");
  }
  const GridFunction g = grid.synthesize(res);
  std::ofstream os = open_output(dir / "transform.csv");
  g.write_csv(os);
  std::ofstream cs = open_output(dir / "coefficients.csv");
  write_coefficients(cs, engine.box(), c, res, "n");
  out << name << ": wrote transform.csv and coefficients.csv to " << dir.string() << '\n';
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg, bool mutate, std::ostream& out) {
  SuiteConfig sc;
  sc.family = cfg.validate();
  sc.dim = cfg.dim;
  sc.truncation = std::max(2, cfg.truncation);
  sc.quad_size = cfg.quad_size();
  sc.seed = cfg.seed;
  sc.threads = cfg.threads;
  sc.t_values.clear();
  for (double t : cfg.t)
    if (t > 0.0) sc.t_values.push_back(t);
  if (sc.t_values.empty()) throw std::invalid_argument("verify needs at least one positive --t value");
  sc.ladder = mutate ? LadderSign::Corrupted : LadderSign::Standard;

  const auto start = std::chrono::steady_clock::now();
  const std::vector<CheckReport> reports = run_suite(sc);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  const fs::path dir(cfg.out);
  fs::create_directories(dir);
  {
    std::ofstream os = open_output(dir / "report.jsonl");
    write_jsonl(os, reports);
    std::ofstream ss = open_output(dir / "summary.txt");
    write_summary(ss, reports, false);
  }
  write_summary(out, reports, true);
  const bool ok = all_pass(reports);
  out << (ok ? "all " : "FAILED: ") << std::count_if(reports.begin(), reports.end(), [](const CheckReport& r) { return r.pass; })
      << '/' << reports.size() << " checks passed in " << std::fixed << std::setprecision(2) << secs << " s\n"
      << std::defaultfloat;
  return ok ? kExitOk : kExitCheckFailure;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectral toolkit for symmetrized orthogonal expansions: bases, Riesz transforms, Poisson integrals."};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value configuration file; flags override it");

  RunConfig cfg;
  app.add_option("--family", cfg.family, "trig | hermite | laguerre | jacobi | ou | sine")->capture_default_str();
  app.add_option("--alpha", cfg.alpha, "family parameter alpha")->capture_default_str();
  app.add_option("--beta", cfg.beta, "family parameter beta (jacobi)")->capture_default_str();
  app.add_option("--dim", cfg.dim, "dimension d")->capture_default_str();
  app.add_option("--trunc", cfg.truncation, "truncation N of the Φ index box {0..N}^d")->capture_default_str();
  app.add_option("--quad", cfg.quad, "quadrature nodes on X_SYM (even, >= 2N+16; default 2N+32)");
  app.add_option("--t", cfg.t, "Poisson times, comma separated")->delimiter(',')->capture_default_str();
  app.add_option("--seed", cfg.seed, "seed for random test vectors")->capture_default_str();
  app.add_option("--out", cfg.out, "output directory")->capture_default_str();
  app.add_option("--threads", cfg.threads, "worker threads for verify")->capture_default_str();

  bool psi = false;
  CLI::App* basis = app.add_subcommand("basis", "sample Φ_n (and optionally Ψ_n) on the quadrature nodes")->fallthrough();
  basis->add_flag("--psi", psi, "also write Ψ_n real and imaginary parts");

  std::string input;
  std::vector<std::string> op;
  CLI::App* transform = app.add_subcommand("transform", "analyze input samples, apply an operator, synthesize")->fallthrough();
  transform->add_option("--input", input, "CSV of samples on the quadrature grid")->required();
  transform->add_option("op", op, "riesz l1..ld | poisson t | conjugate j t | dpow n1..nd")->required();

  bool mutate = false;
  CLI::App* verify = app.add_subcommand("verify", "run the identity checks and write report.jsonl / summary.txt")->fallthrough();
  verify->add_flag("--mutate-ladder", mutate, "flip the sign of the odd->even ladder step (test fixture)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*basis) return cmd_basis(cfg, psi, out);
    if (*transform) return cmd_transform(cfg, input, op, out);
    return cmd_verify(cfg, mutate, out);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace symconj

// nilseq: command-line front end for the nilsequence library.
//
// Exit codes: 0 success, 1 verification failed, 2 bad input,
// 3 search exhausted (no witness within bounds).

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "acceptance.hpp"
#include "nilseq/average.hpp"
#include "nilseq/classify.hpp"
#include "nilseq/serialize.hpp"

namespace {

using namespace nilseq;

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kBadInput = 2;
constexpr int kSearchExhausted = 3;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

int default_workers() {
  if (const char* env = std::getenv("NILSEQ_WORKERS")) {
    int w = std::atoi(env);
    if (w >= 1) return w;
  }
  return 1;
}

// Output sink: --out path or stdout.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw std::invalid_argument("cannot open output file: " + path);
    }
  }
  std::ostream& out() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

BasisPtr load_basis_arg(const std::string& path) {
  if (path.empty()) return standard_basis();
  return basis_from_json(load_json_file(path));
}

std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    std::string item = text.substr(start, comma == std::string::npos ? comma : comma - start);
    if (!item.empty()) out.push_back(std::move(item));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::vector<QAffineReal> parse_qaffine_list(const std::string& text, const BasisPtr& basis) {
  std::vector<QAffineReal> out;
  for (const auto& item : split_commas(text)) out.push_back(parse_qaffine(item, basis));
  return out;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& item : split_commas(text)) {
    std::size_t used = 0;
    out.push_back(std::stod(item, &used));
    if (used != item.size()) throw std::invalid_argument("cannot parse number '" + item + "'");
  }
  return out;
}

std::vector<long long> parse_int_list(const std::string& text) {
  std::vector<long long> out;
  for (const auto& item : split_commas(text)) {
    std::size_t used = 0;
    out.push_back(std::stoll(item, &used));
    if (used != item.size())
      throw std::invalid_argument("cannot parse integer '" + item + "'");
  }
  return out;
}

Json av_result_json(const AvResult& r) {
  return Json{{"schema", kSchemaTag},
              {"value", {{"re", r.value.real()}, {"im", r.value.imag()}}},
              {"n_used", r.n_used},
              {"error_estimate", r.error_estimate}};
}

void emit_rows_csv(std::ostream& out, const ExprPtr& expr, std::int64_t from,
                   std::int64_t to) {
  out << "n,re,im\n";
  for (std::int64_t n = from; n < to; ++n) {
    std::complex<double> v = eval(expr, n);
    out << n << "," << fmt(v.real()) << "," << fmt(v.imag()) << "\n";
  }
}

void emit_rows_json(std::ostream& out, const ExprPtr& expr, std::int64_t from,
                    std::int64_t to) {
  Json rows = Json::array();
  for (std::int64_t n = from; n < to; ++n) {
    std::complex<double> v = eval(expr, n);
    rows.push_back({{"n", n}, {"re", v.real()}, {"im", v.imag()}});
  }
  out << Json{{"schema", kSchemaTag}, {"rows", std::move(rows)}}.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"2-step nilsequences: evaluation, averaging, orbits, classification"};
  app.require_subcommand(1);

  // ---- kappa ----
  auto* kappa_cmd = app.add_subcommand("kappa", "evaluate the theta kernel kappa(s,t)");
  double kap_s = 0.0, kap_t = 0.0, kap_tol = 1e-15;
  kappa_cmd->add_option("--s", kap_s, "first argument (used mod 1)")->required();
  kappa_cmd->add_option("--t", kap_t, "second argument")->required();
  kappa_cmd->add_option("--tol", kap_tol, "truncation bound (<= 1e-3)");

  // ---- eval ----
  auto* eval_cmd = app.add_subcommand("eval", "evaluate an expression file over a range");
  std::string eval_expr, eval_format = "csv", eval_out;
  std::int64_t eval_from = 0, eval_to = 0;
  eval_cmd->add_option("--expr", eval_expr, "expression JSON file")->required();
  eval_cmd->add_option("--from", eval_from, "first n (inclusive)");
  eval_cmd->add_option("--to", eval_to, "last n (exclusive)")->required();
  eval_cmd->add_option("--format", eval_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  eval_cmd->add_option("--out", eval_out, "output path (default stdout)");

  // ---- avg / ip / norm2 ----
  auto* avg_cmd = app.add_subcommand("avg", "Cesaro average of an expression");
  auto* ip_cmd = app.add_subcommand("ip", "inner product of two expressions");
  auto* norm_cmd = app.add_subcommand("norm2", "quadratic norm of an expression");
  std::string avg_expr, avg_expr2, avg_out;
  std::int64_t avg_n = 0;
  int avg_workers = default_workers();
  for (CLI::App* cmd : {avg_cmd, ip_cmd, norm_cmd}) {
    cmd->add_option("--expr", avg_expr, "expression JSON file")->required();
    cmd->add_option("--n", avg_n, "window length N")->required();
    cmd->add_option("--workers", avg_workers, "worker count");
    cmd->add_option("--out", avg_out, "output path (default stdout)");
  }
  ip_cmd->add_option("--expr2", avg_expr2, "second expression JSON file")->required();

  // ---- orbit ----
  auto* orbit_cmd = app.add_subcommand("orbit", "emit n,re,im rows of a system orbit");
  std::string orb_system = "heisenberg", orb_alpha, orb_beta, orb_gamma = "0";
  std::string orb_basis, orb_out;
  std::size_t orb_d = 1;
  std::int64_t orb_n = 0, orb_from = 0;
  orbit_cmd->add_option("--system", orb_system, "heisenberg or affine")
      ->check(CLI::IsMember({"heisenberg", "affine"}));
  orbit_cmd->add_option("--d", orb_d, "Heisenberg dimension d");
  orbit_cmd->add_option("--alpha", orb_alpha, "comma-separated values, e.g. 'xi1,1/2+xi3'")
      ->required();
  orbit_cmd->add_option("--beta", orb_beta, "comma-separated values")->required();
  orbit_cmd->add_option("--gamma", orb_gamma, "central phase (Heisenberg only)");
  orbit_cmd->add_option("--n", orb_n, "emit rows for from <= n < N")->required();
  orbit_cmd->add_option("--from", orb_from, "first n (default 0)");
  orbit_cmd->add_option("--basis", orb_basis, "basis JSON file (default: built-in)");
  orbit_cmd->add_option("--out", orb_out, "output path (default stdout)");

  // ---- decompose ----
  auto* dec_cmd = app.add_subcommand(
      "decompose", "fiber Fourier coefficients of the Gaussian section at a point");
  std::string dec_x, dec_y, dec_chi = "0,1";
  double dec_zarg = 0.0;
  int dec_m = 8;
  dec_cmd->add_option("--x", dec_x, "comma-separated point coordinates in [0,1)")
      ->required();
  dec_cmd->add_option("--y", dec_y, "comma-separated point coordinates in [0,1)")
      ->required();
  dec_cmd->add_option("--zarg", dec_zarg, "fiber coordinate as a fraction of a turn");
  dec_cmd->add_option("--chi", dec_chi, "comma-separated characters");
  dec_cmd->add_option("--m", dec_m, "quadrature points (>= 2|chi|+2)");

  // ---- probe ----
  auto* probe_cmd = app.add_subcommand("probe", "shift-compactness probe");
  std::string probe_expr, probe_shifts, probe_out;
  std::int64_t probe_window = 10000;
  int probe_grid = 4096;
  probe_cmd->add_option("--expr", probe_expr, "expression JSON file")->required();
  probe_cmd->add_option("--shifts", probe_shifts, "comma-separated shifts")->required();
  probe_cmd->add_option("--window", probe_window, "window length (>= 1e3)");
  probe_cmd->add_option("--tgrid", probe_grid, "coarse grid size for the twist");
  probe_cmd->add_option("--out", probe_out, "output path (default stdout)");

  // ---- classify ----
  auto* cls = app.add_subcommand("classify", "witness verification / search / reduction");
  cls->require_subcommand(1);
  auto* cls_verify = cls->add_subcommand("verify", "verify a witness");
  auto* cls_search = cls->add_subcommand("search", "bounded witness search");
  auto* cls_reduce = cls->add_subcommand("reduce", "polarized -> Heisenberg reduction");
  std::string cls_p, cls_pp, cls_w, cls_basis, cls_polarized;
  long long cls_mmax = 6, cls_shiftmax = 4, cls_height = 5;
  for (CLI::App* cmd : {cls_verify, cls_search}) {
    cmd->add_option("--p", cls_p, "class parameters JSON file")->required();
    cmd->add_option("--pprime", cls_pp, "class parameters JSON file")->required();
    cmd->add_option("--basis", cls_basis, "basis JSON file (default: built-in)");
  }
  cls_verify->add_option("--witness", cls_w, "witness JSON file")->required();
  cls_search->add_option("--mmax", cls_mmax, "max m");
  cls_search->add_option("--shiftmax", cls_shiftmax, "max |k|, |l|");
  cls_search->add_option("--height", cls_height, "max entry height of Q");
  cls_reduce->add_option("--polarized", cls_polarized, "polarized system JSON file")
      ->required();
  cls_reduce->add_option("--basis", cls_basis, "basis JSON file (default: built-in)");

  // ---- selftest ----
  auto* self_cmd = app.add_subcommand("selftest", "run the acceptance criteria");
  bool self_quick = false;
  std::uint64_t self_seed = 12345;
  int self_workers = default_workers();
  std::string self_out;
  self_cmd->add_flag("--quick", self_quick, "reduced-N variant, tolerances x3");
  self_cmd->add_option("--seed", self_seed, "seed for the randomized suites");
  self_cmd->add_option("--workers", self_workers, "worker count");
  self_cmd->add_option("--out", self_out, "write the JSON report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kBadInput;
  }

  try {
    if (*kappa_cmd) {
      std::complex<double> v = kappa(kap_s, kap_t, KappaAccuracy{kap_tol});
      std::cout << fmt(v.real()) << "," << fmt(v.imag()) << "\n";
      return kOk;
    }

    if (*eval_cmd) {
      ExprFile f = load_expr_file(eval_expr, standard_basis());
      Sink sink(eval_out);
      if (eval_format == "csv")
        emit_rows_csv(sink.out(), f.expr, eval_from, eval_to);
      else
        emit_rows_json(sink.out(), f.expr, eval_from, eval_to);
      return kOk;
    }

    if (*avg_cmd || *norm_cmd || *ip_cmd) {
      ExprFile f = load_expr_file(avg_expr, standard_basis());
      Sink sink(avg_out);
      if (*avg_cmd) {
        sink.out() << av_result_json(cesaro_av(f.expr, avg_n, avg_workers)).dump(2) << "\n";
      } else if (*norm_cmd) {
        double nrm = quad_norm(f.expr, avg_n, avg_workers);
        sink.out() << Json{{"schema", kSchemaTag}, {"value", nrm}, {"n_used", avg_n}}.dump(2)
                   << "\n";
      } else {
        ExprFile g = load_expr_file(avg_expr2, f.basis ? f.basis : standard_basis());
        sink.out() << av_result_json(inner_product(f.expr, g.expr, avg_n, avg_workers)).dump(2)
                   << "\n";
      }
      return kOk;
    }

    if (*orbit_cmd) {
      BasisPtr basis = load_basis_arg(orb_basis);
      Sink sink(orb_out);
      ExprPtr expr;
      if (orb_system == "heisenberg") {
        HeisenbergSystem sys;
        sys.d = orb_d;
        sys.alpha = parse_qaffine_list(orb_alpha, basis);
        sys.beta = parse_qaffine_list(orb_beta, basis);
        sys.gamma = parse_qaffine(orb_gamma, basis);
        if (sys.alpha.size() != sys.d || sys.beta.size() != sys.d)
          throw std::invalid_argument("orbit: need d alpha and d beta values");
        expr = make_orbit(sys);
      } else {
        auto alphas = parse_qaffine_list(orb_alpha, basis);
        auto betas = parse_qaffine_list(orb_beta, basis);
        if (alphas.size() != 1 || betas.size() != 1)
          throw std::invalid_argument("orbit: the affine system takes one alpha, one beta");
        expr = make_orbit(AffineSkewSystem{alphas[0], betas[0]});
      }
      emit_rows_csv(sink.out(), expr, orb_from, orb_n);
      return kOk;
    }

    if (*dec_cmd) {
      std::vector<double> x = parse_double_list(dec_x);
      std::vector<double> y = parse_double_list(dec_y);
      HeisenbergPoint point = make_heisenberg_point(
          make_heisenberg_element(x, y, cis_frac(dd_frac(dd(dec_zarg)))));
      std::cout << "chi,re,im\n";
      for (long long chi : parse_int_list(dec_chi)) {
        std::complex<double> v =
            fiber_fourier([](const HeisenbergPoint& q) { return c1_gaussian(q); }, point,
                          static_cast<int>(chi), dec_m);
        std::cout << chi << "," << fmt(v.real()) << "," << fmt(v.imag()) << "\n";
      }
      return kOk;
    }

    if (*probe_cmd) {
      ExprFile f = load_expr_file(probe_expr, standard_basis());
      std::vector<std::int64_t> shifts;
      for (long long k : parse_int_list(probe_shifts)) shifts.push_back(k);
      auto rows = shift_compactness_probe(f.expr, shifts, probe_window, probe_grid);
      Json out = Json::array();
      for (const auto& r : rows)
        out.push_back(
            {{"k", r.k}, {"best_t", r.best_t}, {"d_inf", r.d_inf}, {"d_2", r.d_2}});
      Sink sink(probe_out);
      sink.out() << Json{{"schema", kSchemaTag}, {"rows", std::move(out)}}.dump(2) << "\n";
      return kOk;
    }

    if (*cls_verify || *cls_search) {
      BasisPtr basis = load_basis_arg(cls_basis);
      ClassParamsFile pf = load_class_params_file(cls_p, basis);
      ClassParamsFile ppf = load_class_params_file(cls_pp, pf.basis ? pf.basis : basis);
      if (*cls_verify) {
        ClassWitness w = load_witness_file(cls_w);
        bool ok = verify_witness(pf.params, ppf.params, w);
        std::cout << Json{{"schema", kSchemaTag}, {"verified", ok}}.dump(2) << "\n";
        return ok ? kOk : kVerifyFailed;
      }
      SearchResult res = search_witness(pf.params, ppf.params,
                                        SearchBounds{cls_mmax, cls_shiftmax, cls_height});
      Json j{{"schema", kSchemaTag}, {"searched", res.searched}};
      j["witness"] = res.witness ? witness_to_json(*res.witness) : Json(nullptr);
      std::cout << j.dump(2) << "\n";
      return res.witness ? kOk : kSearchExhausted;
    }

    if (*cls_reduce) {
      BasisPtr basis = load_basis_arg(cls_basis);
      PolarizedFile f = load_polarized_file(cls_polarized, basis);
      PolarizedReduction red = polarized_to_heisenberg(f.system);
      Json j{{"schema", kSchemaTag},
             {"phi", ratmatrix_to_json(red.phi)},
             {"system", heisenberg_system_to_json(red.system)},
             {"minimal", red.minimal}};
      std::cout << j.dump(2) << "\n";
      return kOk;
    }

    if (*self_cmd) {
      accept::Config cfg;
      cfg.quick = self_quick;
      cfg.seed = self_seed;
      cfg.workers = self_workers;
      accept::Report report = accept::run_all(cfg);
      accept::print_report(report, std::cout);
      if (!self_out.empty()) {
        std::ofstream out(self_out);
        if (!out) throw std::invalid_argument("cannot open output file: " + self_out);
        out << accept::report_json(report) << "\n";
      }
      return report.all_pass() ? kOk : kVerifyFailed;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::exception& e) {
    // internal consistency failures (dual-route disagreements and the like)
    std::cerr << "verification error: " << e.what() << "\n";
    return kVerifyFailed;
  }
  return kBadInput;
}

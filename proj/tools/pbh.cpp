// pbh: command-line front end for the pseudo-boson verification suites.
//
// Exit codes: 0 all checks pass, 1 a check failed (named on stderr),
// 2 invalid flags or parameters.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pbh/matrix_io.hpp"
#include "pbh/verify.hpp"

using nlohmann::json;
using namespace pbh;

namespace {

struct Config {
  double beta = 0.5;
  double gamma = 0.75;
  std::size_t trunc = 40;
  std::size_t depth = 60;
  std::size_t algebra_trunc = 8;
  std::size_t union_trunc = 10;
  std::pair<int, int> k_range{-2, 2};
  int m_max = 3;
  int n_max = 3;
  std::size_t n_eigs = 3;
  double lambda = 0.6;
  int k = 0;
  std::vector<std::size_t> depths{15, 30, 60};
  std::string format = "json";
  std::string out;
  std::string input;
  std::vector<std::string> tol_overrides;
  verify::Tolerances tol;

  pseudoboson::ModelParams params() const { return {beta, gamma}; }
};

/// Rounds to 15 significant digits so serialized output is stable.
double r15(double v) {
  if (!std::isfinite(v)) return v;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return std::strtod(buf, nullptr);
}

std::string csv_num(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

json cnum(cplx z) { return json{{"re", r15(z.real())}, {"im", r15(z.imag())}}; }

json matrix_json(const CMatrix& m) {
  json re = json::array(), im = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json a = json::array(), b = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) {
      a.push_back(r15(m(i, j).real()));
      b.push_back(r15(m(i, j).imag()));
    }
    re.push_back(a);
    im.push_back(b);
  }
  return {{"n", m.rows()}, {"re", re}, {"im", im}};
}

std::map<std::string, double*> tolerance_fields(verify::Tolerances& t) {
  return {{"emm", &t.emm},
          {"emm_residual", &t.emm_residual},
          {"commutator", &t.commutator},
          {"eom", &t.eom},
          {"diagonal", &t.diagonal},
          {"eigen_residual", &t.eigen_residual},
          {"biorth", &t.biorth},
          {"similarity", &t.similarity},
          {"sector", &t.sector},
          {"sector_union", &t.sector_union},
          {"su11", &t.su11},
          {"casimir", &t.casimir},
          {"lowest_weight", &t.lowest_weight},
          {"stability", &t.stability},
          {"theorem1_similarity", &t.theorem1_similarity},
          {"theorem1_biorth", &t.theorem1_biorth}};
}

void apply_tolerance_overrides(Config& c) {
  auto fields = tolerance_fields(c.tol);
  for (const auto& s : c.tol_overrides) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw CLI::ValidationError("--tol", "expected name=value, got '" + s + "'");
    const auto it = fields.find(s.substr(0, eq));
    if (it == fields.end()) throw CLI::ValidationError("--tol", "unknown tolerance '" + s.substr(0, eq) + "'");
    try {
      std::size_t used = 0;
      const double v = std::stod(s.substr(eq + 1), &used);
      if (used != s.size() - eq - 1 || !(v >= 0.0)) throw std::invalid_argument(s);
      *it->second = v;
    } catch (const std::exception&) {
      throw CLI::ValidationError("--tol", "bad value in '" + s + "'");
    }
  }
}

/// Output document under construction: data payload, CSV table and checks.
struct Output {
  json data = json::object();
  std::vector<std::string> csv_header;
  std::vector<std::vector<std::string>> csv_rows;
  std::vector<verify::SuiteReport> suites;
  bool checks_as_csv = false;
};

json checks_json(const std::vector<verify::SuiteReport>& suites) {
  json arr = json::array();
  for (const auto& s : suites)
    for (const auto& c : s.checks)
      arr.push_back({{"suite", s.name},
                     {"check", c.name},
                     {"value", r15(c.value)},
                     {"threshold", r15(c.threshold)},
                     {"bound", c.lower_bound ? "min" : "max"},
                     {"passed", c.passed()}});
  return arr;
}

void checks_csv(const std::vector<verify::SuiteReport>& suites, Output& o) {
  o.csv_header = {"suite", "check", "value", "threshold", "bound", "passed"};
  o.csv_rows.clear();
  for (const auto& s : suites)
    for (const auto& c : s.checks)
      o.csv_rows.push_back({s.name, c.name, csv_num(c.value), csv_num(c.threshold), c.lower_bound ? "min" : "max",
                            c.passed() ? "true" : "false"});
}

json config_json(const Config& c, const std::string& command) {
  json tol = json::object();
  verify::Tolerances t = c.tol;
  for (const auto& [name, ptr] : tolerance_fields(t)) tol[name] = r15(*ptr);
  return {{"command", command},
          {"beta", r15(c.beta)},
          {"gamma", r15(c.gamma)},
          {"trunc", c.trunc},
          {"depth", c.depth},
          {"k_range", {c.k_range.first, c.k_range.second}},
          {"m_max", c.m_max},
          {"n_max", c.n_max},
          {"tolerances", tol}};
}

// --- commands ---------------------------------------------------------------

void cmd_spectrum(const Config& c, Output& o) {
  const auto tab = pseudoboson::spectrum_table(c.params(), c.m_max, c.n_max);
  json grid = json::array();
  o.csv_header = {"m", "n", "k", "energy"};
  for (int m = 0; m <= c.m_max; ++m) {
    json row = json::array();
    for (int n = 0; n <= c.n_max; ++n) {
      row.push_back(r15(tab.grid[m][n]));
      o.csv_rows.push_back({std::to_string(m), std::to_string(n), std::to_string(m - n), csv_num(tab.grid[m][n])});
    }
    grid.push_back(row);
  }
  const auto p = c.params();
  o.data = {{"rho", r15(p.rho())}, {"alpha", r15(p.alpha())}, {"energies", grid}};
}

void cmd_sectors(const Config& c, Output& o) {
  const auto p = c.params();
  json list = json::array();
  o.csv_header = {"k", "depth", "index", "re", "im", "target", "abs_error", "residual"};
  for (int k = c.k_range.first; k <= c.k_range.second; ++k)
    for (std::size_t d : {c.depth, 2 * c.depth}) {
      const auto s = sectors::sector_spectrum({k, d}, p, c.n_eigs);
      json vals = json::array();
      for (std::size_t i = 0; i < c.n_eigs; ++i) {
        vals.push_back({{"value", cnum(s.report.values[i])},
                        {"target", r15(s.targets[i])},
                        {"abs_error", r15(s.abs_errors[i])},
                        {"residual", r15(s.report.residuals[i])}});
        o.csv_rows.push_back({std::to_string(k), std::to_string(d), std::to_string(i), csv_num(s.report.values[i].real()),
                              csv_num(s.report.values[i].imag()), csv_num(s.targets[i]), csv_num(s.abs_errors[i]),
                              csv_num(s.report.residuals[i])});
      }
      list.push_back({{"k", k}, {"depth", d}, {"lowest", vals}});
    }
  o.data = {{"sectors", list}};
  o.suites.push_back(verify::sectors_suite(p, c.k_range.first, c.k_range.second, c.depth, c.n_eigs, c.union_trunc, c.tol));
}

void cmd_biorth(const Config& c, Output& o) {
  const auto p = c.params();
  const auto rep = pseudoboson::biorthogonality_matrix(p, c.m_max, c.n_max, fock::TruncationSpec::square(c.trunc));
  json entries = json::array();
  o.csv_header = {"m", "n", "p", "q", "re", "im", "expected"};
  for (int m = 0; m <= c.m_max; ++m)
    for (int n = 0; n <= c.n_max; ++n)
      for (int pp = 0; pp <= c.m_max; ++pp)
        for (int q = 0; q <= c.n_max; ++q) {
          const cplx g = rep.at(m, n, pp, q);
          const double expect =
              (m == pp && n == q) ? pseudoboson::factorial(m) * pseudoboson::factorial(n) * rep.scale.real() : 0.0;
          entries.push_back({{"m", m}, {"n", n}, {"p", pp}, {"q", q}, {"value", cnum(g)}, {"expected", r15(expect)}});
          o.csv_rows.push_back({std::to_string(m), std::to_string(n), std::to_string(pp), std::to_string(q), csv_num(g.real()),
                                csv_num(g.imag()), csv_num(expect)});
        }
  const double al = p.alpha();
  o.data = {{"scale", cnum(rep.scale)},
            {"scale_closed_form", r15(1.0 / (1.0 + al * al))},
            {"max_offdiag", r15(rep.max_offdiag)},
            {"max_diag_error", r15(rep.max_diag_error)},
            {"gram", entries}};
  o.suites.push_back(verify::biorth_suite(p, c.m_max, c.n_max, c.trunc, c.tol));
}

void cmd_commutators(const Config& c, Output& o) {
  o.suites.push_back(verify::commutator_suite(c.params(), c.trunc, c.tol));
  o.checks_as_csv = true;
}

void cmd_emm(const Config& c, Output& o) {
  const auto p = c.params();
  const RMatrix T = emm::emm_T_matrix(p);
  const auto sol = emm::emm_eigenpairs(p);
  const auto num = linalg::eig_dense(T);
  json pairs = json::array(), numeric = json::array();
  o.csv_header = {"index", "lambda", "x_a", "x_b", "y_a", "y_b", "numeric_re", "numeric_im"};
  for (std::size_t i = 0; i < 4; ++i) {
    const auto& e = sol.pairs[i];
    const CVector v = e.vec.stacked();
    json vec = json::array();
    for (const cplx z : v) vec.push_back(r15(z.real()));
    pairs.push_back({{"lambda", r15(e.lambda)}, {"vector", vec}});
    numeric.push_back(cnum(num.values[i]));
    o.csv_rows.push_back({std::to_string(i + 1), csv_num(e.lambda), csv_num(v[0].real()), csv_num(v[1].real()),
                          csv_num(v[2].real()), csv_num(v[3].real()), csv_num(num.values[i].real()),
                          csv_num(num.values[i].imag())});
  }
  o.data = {{"T", matrix_json(to_complex(T))},
            {"closed_form", pairs},
            {"numeric", numeric},
            {"degenerate", sol.degenerate},
            {"max_multiplicity", sol.max_multiplicity}};
  o.suites.push_back(verify::emm_suite(p, c.tol));
}

void cmd_stability(const Config& c, Output& o) {
  const auto scan = sectors::hermitian_variant_scan(c.k, c.beta, c.lambda, c.depths);
  json pts = json::array();
  o.csv_header = {"depth", "lowest", "analytic"};
  for (const auto& pt : scan.points) {
    json low = json::array();
    for (double v : pt.low_spectrum) low.push_back(r15(v));
    pts.push_back({{"depth", pt.depth}, {"lowest", r15(pt.lowest)}, {"low_spectrum", low}});
    o.csv_rows.push_back({std::to_string(pt.depth), csv_num(pt.lowest), csv_num(scan.analytic_lowest)});
  }
  o.data = {{"k", scan.k},
            {"lambda", r15(scan.lambda)},
            {"bounded", scan.bounded},
            {"analytic_lowest", scan.bounded ? json(r15(scan.analytic_lowest)) : json(nullptr)},
            {"points", pts}};
  o.suites.push_back(verify::stability_suite(scan, c.tol));
}

json theorem1_json(const finitesim::Theorem1Report& rep) {
  json ev = json::array();
  for (double v : rep.eigenvalues) ev.push_back(r15(v));
  return {{"eigenvalues", ev},
          {"max_imag", r15(rep.max_imag)},
          {"spectrum_match", r15(rep.spectrum_match)},
          {"biorth_error", r15(rep.biorth_error)},
          {"similarity_error", r15(rep.similarity_error)},
          {"intertwining_residual", r15(rep.intertwining_residual)},
          {"unitarity_defect", r15(rep.unitarity_defect)},
          {"S", matrix_json(rep.S)}};
}

void cmd_theorem1(const Config& c, Output& o) {
  const CMatrix m = io::read_matrix_file(c.input);
  const auto rep = finitesim::verify_theorem1(m);
  o.data = theorem1_json(rep);
  o.csv_header = {"index", "eigenvalue"};
  for (std::size_t i = 0; i < rep.eigenvalues.size(); ++i) o.csv_rows.push_back({std::to_string(i), csv_num(rep.eigenvalues[i])});
  o.suites.push_back(verify::theorem1_suite(rep, c.tol));
}

void cmd_verify_all(const Config& c, Output& o) {
  const auto p = c.params();
  o.suites.push_back(verify::emm_suite(p, c.tol));
  o.suites.push_back(verify::commutator_suite(p, c.algebra_trunc, c.tol));
  o.suites.push_back(verify::eigenvector_suite(p, c.m_max, c.n_max, c.trunc, c.tol));
  o.suites.push_back(verify::biorth_suite(p, c.m_max, c.n_max, c.trunc, c.tol));
  o.suites.push_back(verify::similarity_suite(p, c.algebra_trunc, c.k_range.first, c.k_range.second, c.depth, c.tol));
  o.suites.push_back(verify::sectors_suite(p, c.k_range.first, c.k_range.second, c.depth, c.n_eigs, c.union_trunc, c.tol));
  o.suites.push_back(verify::su11_suite(p, c.k_range.first, c.k_range.second, c.depth, c.tol));
  auto st = verify::stability_suite(sectors::hermitian_variant_scan(c.k, c.beta, c.lambda, c.depths), c.tol);
  o.suites.push_back(st);
  const CMatrix m = c.input.empty() ? CMatrix{{1, 1}, {0, 2}} : io::read_matrix_file(c.input);
  o.suites.push_back(verify::theorem1_suite(finitesim::verify_theorem1(m), c.tol));
  json summary = json::array();
  for (const auto& s : o.suites)
    summary.push_back({{"suite", s.name}, {"passed", s.passed()}, {"max_deviation", r15(s.max_deviation())}});
  o.data = {{"suites", summary}};
  o.checks_as_csv = true;
}

void write_output(const Config& c, const std::string& command, Output& o) {
  std::ostringstream text;
  bool all = true;
  for (const auto& s : o.suites) all = all && s.passed();
  if (c.format == "csv") {
    if (o.checks_as_csv) checks_csv(o.suites, o);
    for (std::size_t i = 0; i < o.csv_header.size(); ++i) text << (i ? "," : "") << o.csv_header[i];
    text << "\n";
    for (const auto& row : o.csv_rows) {
      for (std::size_t i = 0; i < row.size(); ++i) text << (i ? "," : "") << row[i];
      text << "\n";
    }
  } else {
    json doc = {{"schema", "1"},
                {"config", config_json(c, command)},
                {"data", o.data},
                {"checks", checks_json(o.suites)},
                {"passed", all}};
    text << doc.dump(2) << "\n";
  }
  if (c.out.empty()) {
    std::cout << text.str();
  } else {
    std::ofstream f(c.out);
    if (!f) throw Error("cannot write output file '" + c.out + "'");
    f << text.str();
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pseudo-boson model verification tool"};
  app.require_subcommand(1);
  Config cfg;

  auto common = [&cfg](CLI::App* s) {
    s->add_option("--beta", cfg.beta, "beta coupling")->capture_default_str();
    s->add_option("--gamma", cfg.gamma, "gamma coupling (>= 0)")->capture_default_str();
    s->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
    s->add_option("--out", cfg.out, "write output to this file instead of stdout");
    s->add_option("--tol", cfg.tol_overrides, "tolerance override name=value (repeatable)");
  };
  auto trunc = [&cfg](CLI::App* s) {
    s->add_option("--trunc", cfg.trunc, "square Fock truncation n_max")->check(CLI::Range(1, 60))->capture_default_str();
  };
  auto grid = [&cfg](CLI::App* s) {
    s->add_option("--m-max", cfg.m_max, "largest m in the grid")->check(CLI::Range(0, 20))->capture_default_str();
    s->add_option("--n-max", cfg.n_max, "largest n in the grid")->check(CLI::Range(0, 20))->capture_default_str();
  };
  auto sector = [&cfg](CLI::App* s) {
    s->add_option("--depth", cfg.depth, "sector chain depth")->check(CLI::Range(2, 2000))->capture_default_str();
    s->add_option("--k-range", cfg.k_range, "sector labels k_min k_max")->capture_default_str();
    s->add_option("--n-eigs", cfg.n_eigs, "eigenvalues per sector")->check(CLI::Range(1, 50))->capture_default_str();
    s->add_option("--union-trunc", cfg.union_trunc, "truncation for the full-vs-sector spectrum check")
        ->check(CLI::Range(1, 20))
        ->capture_default_str();
  };
  auto scan = [&cfg](CLI::App* s) {
    s->add_option("--lambda", cfg.lambda, "coupling magnitude of the self-adjoint variant")->capture_default_str();
    s->add_option("--k", cfg.k, "sector label")->capture_default_str();
    s->add_option("--depths", cfg.depths, "chain depths to scan")->delimiter(',')->capture_default_str();
  };

  std::map<std::string, void (*)(const Config&, Output&)> handlers;
  auto add = [&](const char* name, const char* help, void (*fn)(const Config&, Output&)) {
    auto* s = app.add_subcommand(name, help);
    common(s);
    handlers[name] = fn;
    return s;
  };

  grid(add("spectrum", "closed-form energy table E_{m,n}", cmd_spectrum));
  sector(add("sectors", "sector eigenvalues against closed form", cmd_sectors));
  {
    auto* s = add("biorth", "Gram grid of the biorthogonal eigenvectors", cmd_biorth);
    trunc(s);
    grid(s);
  }
  trunc(add("commutators", "commutation relations on truncated Fock space", cmd_commutators));
  add("emm", "equation-of-motion matrix and its closed-form eigenpairs", cmd_emm);
  scan(add("stability", "lowest eigenvalue of the self-adjoint variant versus depth", cmd_stability));
  add("theorem1", "finite-dimensional similarity check on a matrix file", cmd_theorem1)
      ->add_option("--input", cfg.input, "matrix file (.json or .csv)")
      ->required()
      ->check(CLI::ExistingFile);
  {
    auto* s = add("verify-all", "run every suite", cmd_verify_all);
    trunc(s);
    grid(s);
    sector(s);
    scan(s);
    s->add_option("--algebra-trunc", cfg.algebra_trunc, "truncation for operator identities")
        ->check(CLI::Range(2, 40))
        ->capture_default_str();
    s->add_option("--input", cfg.input, "matrix file for the theorem1 suite")->check(CLI::ExistingFile);
  }

  try {
    app.parse(argc, argv);
    apply_tolerance_overrides(cfg);
    if (cfg.k_range.first > cfg.k_range.second) throw CLI::ValidationError("--k-range", "k_min must not exceed k_max");
    if (cfg.gamma < 0.0) throw CLI::ValidationError("--gamma", "gamma must be nonnegative");
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    std::cerr << app.help();
    return 2;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  Output out;
  try {
    handlers.at(command)(cfg, out);
    write_output(cfg, command, out);
  } catch (const Error& e) {
    // an input matrix without real distinct spectrum is a failed check, anything else a bad parameter
    const std::string msg = e.what();
    if (msg.rfind("verify_theorem1:", 0) == 0) {
      std::cerr << "FAIL theorem1.real_distinct_spectrum: " << msg << "\n";
      return 1;
    }
    std::cerr << "error: " << msg << "\n";
    return 2;
  }
  for (const auto& s : out.suites)
    if (const auto* f = s.first_failure()) {
      std::cerr << "FAIL " << s.name << "." << f->name << ": value " << f->value << (f->lower_bound ? " <= " : " > ")
                << f->threshold << "\n";
      return 1;
    }
  return 0;
}

#include "lfc/cli.hpp"

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "lfc/error.hpp"
#include "lfc/kernels.hpp"
#include "lfc/operators.hpp"
#include "lfc/verify.hpp"
#include "lfc/weights.hpp"

namespace lfc::cli {

namespace {

double parse_real(std::string_view s, std::string_view whole) {
  if (s.empty() || s == "+") return 1.0;
  if (s == "-") return -1.0;
  if (s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::invalid_argument("bad complex literal '" + std::string(whole) + "'");
  }
  return v;
}

}  // namespace

complex parse_complex(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty complex literal");
  if (text.back() != 'i') {
    if (text.size() == 1 && (text[0] == '+' || text[0] == '-')) {
      throw std::invalid_argument("bad complex literal '" + std::string(text) + "'");
    }
    return {parse_real(text, text), 0.0};
  }
  const std::string_view body = text.substr(0, text.size() - 1);
  // the sign that separates the parts is the last one not in an exponent
  std::size_t split = std::string_view::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  if (split == std::string_view::npos) return {0.0, parse_real(body, text)};
  const std::string_view re = body.substr(0, split);
  if (re.empty() || re == "+" || re == "-") throw std::invalid_argument("bad complex literal '" + std::string(text) + "'");
  return {parse_real(re, text), parse_real(body.substr(split), text)};
}

LinearFractionalMap parse_map(std::string_view text) {
  std::vector<complex> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    parts.push_back(parse_complex(text.substr(start, comma == std::string_view::npos ? comma : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (parts.size() != 4) throw std::invalid_argument("--map needs four coefficients a,b,c,d");
  return {parts[0], parts[1], parts[2], parts[3]};
}

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(text);
  std::string out = "\"";
  for (const char ch : text) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

namespace {

std::string number(double v) { return nlohmann::json(v).dump(); }

std::string complex_text(complex z) {
  std::ostringstream os;
  os.precision(17);
  os << z.real() << (z.imag() < 0 || std::signbit(z.imag()) ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

}  // namespace

std::string reports_csv(const std::vector<VerificationReport>& reports) {
  std::string out = "check,params,residual,value,pass\r\n";
  for (const auto& r : reports) {
    const std::string head = csv_field(r.check) + "," + csv_field(r.params.dump()) + ",";
    const std::string tail = std::string(",") + (r.pass ? "true" : "false") + "\r\n";
    for (const auto& [name, value] : r.residuals) out += head + csv_field(name) + "," + number(value) + tail;
  }
  return out;
}

namespace {

VerificationReport kernel_report(double alpha, std::size_t M, double tol) {
  const KernelResidual k = residual_coefficients(alpha, M, tol);
  VerificationReport r;
  r.check = "kernel-residual";
  r.params = {{"alpha", alpha}, {"regime", describe(classify_alpha(alpha))}, {"tol", tol},
              {"degree_bound", k.degree_bound}};
  r.residuals["max_high"] = k.max_high;
  r.decay = k.residual;
  r.pass = k.vanishes;
  r.truncations = {M, M};
  return r;
}

VerificationReport failed_report(std::string check, const std::exception& e) {
  VerificationReport r;
  r.check = std::move(check);
  r.params = {{"error", e.what()}};
  r.pass = false;
  return r;
}

}  // namespace

std::vector<VerificationReport> run_suite(std::size_t M) {
  const LinearFractionalMap phi(1.0, 0.0, -1.0, 3.0);
  const std::size_t k = std::max<std::size_t>(1, M / 8);
  std::vector<std::pair<std::string, std::function<VerificationReport()>>> jobs;
  for (double alpha : {-1.0, 0.0, 1.5}) {
    jobs.emplace_back("cowen-exact", [=] { return run_exact_identity(phi, alpha, M, k); });
  }
  for (double alpha : {-2.0, -2.5, -3.0, -3.5}) {
    jobs.emplace_back("cowen-finite-rank", [=] { return run_finite_rank(phi, alpha, M); });
  }
  jobs.emplace_back("cowen-exact", [=] {
    return run_exact_identity(LinearFractionalMap::rotation(std::polar(1.0, 0.7)), -1.0, M, k, 1e-12);
  });
  jobs.emplace_back("cowen-finite-rank",
                    [=] { return run_finite_rank(LinearFractionalMap::identity(), -3.5, M); });
  jobs.emplace_back("cowen-compact", [=] { return run_compact_decay(phi, power_law_family(1.0, 1.0), 1.0, M); });
  jobs.emplace_back("perturbation", [=] {
    return run_perturbation(a2alpha_family(-3.0), power_law_family(1.0, 1.0), composition_recipe(phi), M, k);
  });
  jobs.emplace_back("heller-a", [=] { return run_heller_a(phi, 1.0, M); });
  jobs.emplace_back("heller-b", [=] { return run_heller_b(1.0, 0.5, 1.0, M); });
  for (double alpha : {0.0, -2.0, -2.5, -3.0, -3.5}) {
    jobs.emplace_back("kernel-residual", [=] { return kernel_report(alpha, M, 1e-10); });
  }

  std::vector<VerificationReport> reports(jobs.size());
  const long n = static_cast<long>(jobs.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) {
    try {
      reports[i] = jobs[i].second();
    } catch (const std::exception& e) {
      reports[i] = failed_report(jobs[i].first, e);
    }
  }
  sort_reports(reports);
  return reports;
}

namespace {

struct Config {
  std::string map = "1,0,-1,3";
  std::optional<double> alpha;
  std::optional<double> t;
  double ell = 1.0;
  std::size_t trunc = 128;
  std::optional<std::size_t> block;
  double tol = kIdentityTol;
  double rel_tol = kRankRelTol;
  double kernel_tol = 1e-10;
  double ratio = kDecayRatio;
  std::string lambda = "1";
  std::string u = "0.5";
  std::string op = "composition";
  bool singular = false;
  std::string out;
  std::string format = "json";
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check_verify_truncation(const Config& c) {
  if (c.trunc < 32 || c.trunc > 1024 || (c.trunc & (c.trunc - 1)) != 0) {
    throw UsageError("--trunc must be a power of two in [32, 1024]");
  }
  if (c.block && *c.block > c.trunc / 8) throw UsageError("--block must be at most trunc/8");
}

// 16 unless the truncation is too small for it
std::size_t block_of(const Config& c) { return c.block.value_or(std::min<std::size_t>(16, c.trunc / 8)); }

// --out relative to LFC_OUTPUT_DIR when set; with no --out, the directory
// receives <name>.<format>; otherwise stdout.
std::optional<std::filesystem::path> output_path(const Config& c, const std::string& name) {
  const char* dir = std::getenv("LFC_OUTPUT_DIR");
  if (c.out.empty() || c.out == "-") {
    if (!dir || !*dir) return std::nullopt;
    return std::filesystem::path(dir) / (name + "." + c.format);
  }
  std::filesystem::path p(c.out);
  if (dir && *dir && p.is_relative()) p = std::filesystem::path(dir) / p;
  return p;
}

void emit(const Config& c, const std::string& name, const std::string& text, std::ostream& out) {
  if (const auto path = output_path(c, name)) {
    if (path->has_parent_path()) std::filesystem::create_directories(path->parent_path());
    std::ofstream f(*path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path->string());
    f << text;
  } else {
    out << text;
  }
}

int emit_reports(const Config& c, const std::string& name, const std::vector<VerificationReport>& reports,
                 std::ostream& out) {
  std::string text;
  if (c.format == "csv") {
    text = reports_csv(reports);
  } else {
    nlohmann::json j;
    if (reports.size() == 1) {
      j = to_json(reports.front());
    } else {
      j = nlohmann::json::array();
      for (const auto& r : reports) j.push_back(to_json(r));
    }
    text = j.dump(2) + "\n";
  }
  emit(c, name, text, out);
  for (const auto& r : reports) {
    if (!r.pass) return 1;
  }
  return 0;
}

WeightSequence weights_for(const Config& c, std::size_t order) {
  if (c.alpha.has_value() == c.t.has_value()) throw UsageError("give exactly one of --alpha and --t");
  if (c.alpha) return a2alpha_weights(*c.alpha, order);
  return power_law_weights(*c.t, c.ell, order);
}

int cmd_weights(const Config& c, std::ostream& out) {
  const WeightSequence w = weights_for(c, c.trunc);
  std::string text;
  if (c.format == "csv") {
    text = "n,beta\r\n";
    for (std::size_t n = 0; n <= w.order(); ++n) text += std::to_string(n) + "," + number(w[n]) + "\r\n";
  } else {
    text = nlohmann::json{{"regime", describe(w.regime())}, {"beta", w.values()}}.dump(2) + "\n";
  }
  emit(c, "weights", text, out);
  return 0;
}

int cmd_matrix(const Config& c, std::ostream& out) {
  const LinearFractionalMap phi = parse_map(c.map);
  const WeightSequence w = weights_for(c, c.trunc);
  std::optional<OperatorMatrix> m;
  if (c.op == "composition") {
    m = composition_matrix(phi, w, c.trunc);
  } else if (c.op == "adjoint") {
    m = adjoint_matrix(composition_matrix(phi, w, c.trunc));
  } else {
    const SymbolMode mode = c.alpha ? SymbolMode{AlphaMode{*c.alpha}} : SymbolMode{PowerMode{*c.t}};
    m = cowen_difference(phi, w, mode, c.trunc);
  }
  std::string text;
  if (c.singular) {
    const std::vector<double> sv = singular_values(*m);
    if (c.format == "csv") {
      text = "k,sigma\r\n";
      for (std::size_t i = 0; i < sv.size(); ++i) text += std::to_string(i + 1) + "," + number(sv[i]) + "\r\n";
    } else {
      text = nlohmann::json{{"operator", m->label()}, {"singular_values", sv}}.dump(2) + "\n";
    }
  } else if (c.format == "csv") {
    text = "m,n,re,im\r\n";
    for (std::size_t n = 0; n < m->cols(); ++n) {
      for (std::size_t r = 0; r < m->rows(); ++r) {
        const complex v = (*m)(r, n);
        text += std::to_string(r) + "," + std::to_string(n) + "," + number(v.real()) + "," + number(v.imag()) + "\r\n";
      }
    }
  } else {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t r = 0; r < m->rows(); ++r) {
      nlohmann::json row = nlohmann::json::array();
      for (std::size_t n = 0; n < m->cols(); ++n) row.push_back(complex_text((*m)(r, n)));
      rows.push_back(row);
    }
    text = nlohmann::json{{"operator", m->label()}, {"entries", rows}}.dump(2) + "\n";
  }
  emit(c, "matrix", text, out);
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Config c;
  CLI::App app{"Adjoints of linear fractional composition operators on weighted Hardy spaces"};
  app.require_subcommand(1);
  std::function<int()> action;

  auto add_format = [&](CLI::App* s) {
    s->add_option("--out", c.out, "Output file (default stdout)");
    s->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  };
  auto add_map = [&](CLI::App* s) { s->add_option("--map", c.map, "Coefficients a,b,c,d (complex as a+bi)"); };
  auto add_trunc = [&](CLI::App* s) { s->add_option("--trunc", c.trunc, "Truncation order M"); };

  auto* weights = app.add_subcommand("weights", "Emit the weight sequence");
  auto* wa = weights->add_option("--alpha", c.alpha, "A^2_alpha weights");
  auto* wt = weights->add_option("--t", c.t, "Power-law exponent");
  wa->excludes(wt);
  weights->add_option("--ell", c.ell, "Power-law constant");
  add_trunc(weights);
  add_format(weights);
  weights->callback([&] { action = [&] { return cmd_weights(c, out); }; });

  auto* matrix = app.add_subcommand("matrix", "Emit an operator matrix");
  add_map(matrix);
  auto* ma = matrix->add_option("--alpha", c.alpha, "A^2_alpha weights");
  auto* mt = matrix->add_option("--t", c.t, "Power-law exponent");
  ma->excludes(mt);
  matrix->add_option("--ell", c.ell, "Power-law constant");
  matrix->add_option("--operator", c.op, "composition, adjoint or difference")
      ->check(CLI::IsMember({"composition", "adjoint", "difference"}));
  matrix->add_flag("--singular-values", c.singular, "Emit singular values instead of entries");
  add_trunc(matrix);
  add_format(matrix);
  matrix->callback([&] { action = [&] { return cmd_matrix(c, out); }; });

  auto* kernel = app.add_subcommand("kernel", "Kernel residual coefficients");
  kernel->add_option("--alpha", c.alpha, "alpha")->required();
  kernel->add_option("--tol", c.kernel_tol, "Absolute tolerance");
  add_trunc(kernel);
  add_format(kernel);
  kernel->callback([&] {
    action = [&] { return emit_reports(c, "kernel", {kernel_report(*c.alpha, c.trunc, c.kernel_tol)}, out); };
  });

  auto* verify = app.add_subcommand("verify", "Run one verification");
  verify->require_subcommand(1);

  auto* cowen = verify->add_subcommand("cowen", "Adjoint formula residual (exact or finite rank)");
  add_map(cowen);
  cowen->add_option("--alpha", c.alpha, "alpha")->required();
  cowen->add_option("--block", c.block, "Leading block k");
  cowen->add_option("--tol", c.tol, "Residual tolerance");
  cowen->add_option("--rel-tol", c.rel_tol, "Relative singular value cutoff");
  add_trunc(cowen);
  add_format(cowen);
  cowen->callback([&] {
    action = [&] {
      check_verify_truncation(c);
      const LinearFractionalMap phi = parse_map(c.map);
      const double alpha = *c.alpha;
      return emit_reports(c, "cowen",
                          {alpha + 2.0 > 0.0 ? run_exact_identity(phi, alpha, c.trunc, block_of(c), c.tol)
                                             : run_finite_rank(phi, alpha, c.trunc, c.rel_tol)},
                          out);
    };
  });

  auto* compact = verify->add_subcommand("compact", "Compactness decay in power-law weights");
  add_map(compact);
  compact->add_option("--t", c.t, "Power-law exponent")->required();
  compact->add_option("--ell", c.ell, "Power-law constant");
  compact->add_option("--ratio", c.ratio, "Band ratio limit");
  add_trunc(compact);
  add_format(compact);
  compact->callback([&] {
    action = [&] {
      check_verify_truncation(c);
      DecayOptions opts;
      opts.ratio_limit = c.ratio;
      return emit_reports(
          c, "compact", {run_compact_decay(parse_map(c.map), power_law_family(*c.t, c.ell), *c.t, c.trunc, opts)},
          out);
    };
  });

  auto* perturb = verify->add_subcommand("perturbation", "A^2_alpha against equivalent power-law weights");
  add_map(perturb);
  perturb->add_option("--alpha", c.alpha, "alpha of the first weights")->required();
  perturb->add_option("--ell", c.ell, "Power-law constant of the second weights");
  perturb->add_option("--block", c.block, "Leading block k");
  perturb->add_option("--tol", c.tol, "Residual tolerance");
  add_trunc(perturb);
  add_format(perturb);
  perturb->callback([&] {
    action = [&] {
      check_verify_truncation(c);
      const double alpha = *c.alpha;
      const double t = -(alpha + 1.0) / 2.0;
      return emit_reports(c, "perturbation",
                          {run_perturbation(a2alpha_family(alpha), power_law_family(t, c.ell),
                                            composition_recipe(parse_map(c.map)), c.trunc, block_of(c), c.tol)},
                          out);
    };
  });

  auto* ha = verify->add_subcommand("heller-a", "Adjoint formula for phi(0) = 0");
  add_map(ha);
  ha->add_option("--t", c.t, "Power-law exponent")->required();
  ha->add_option("--ell", c.ell, "Power-law constant");
  add_trunc(ha);
  add_format(ha);
  ha->callback([&] {
    action = [&] {
      check_verify_truncation(c);
      return emit_reports(c, "heller-a", {run_heller_a(parse_map(c.map), *c.t, c.trunc, c.ell)}, out);
    };
  });

  auto* hb = verify->add_subcommand("heller-b", "Adjoint formula for disk automorphisms");
  hb->add_option("--lambda", c.lambda, "Unimodular rotation");
  hb->add_option("--u", c.u, "Point of the disk");
  hb->add_option("--t", c.t, "Power-law exponent")->required();
  hb->add_option("--ell", c.ell, "Power-law constant");
  add_trunc(hb);
  add_format(hb);
  hb->callback([&] {
    action = [&] {
      check_verify_truncation(c);
      return emit_reports(
          c, "heller-b", {run_heller_b(parse_complex(c.lambda), parse_complex(c.u), *c.t, c.trunc, c.ell)}, out);
    };
  });

  auto* suite = app.add_subcommand("suite", "Run the full battery");
  add_trunc(suite);
  add_format(suite);
  suite->callback([&] {
    action = [&] {
      check_verify_truncation(c);
      return emit_reports(c, "suite", run_suite(c.trunc), out);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  try {
    return action ? action() : 2;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << "\n";
  } catch (const std::invalid_argument& e) {
    err << "invalid argument: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return 2;
}

}  // namespace lfc::cli

#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "heintze/io.hpp"
#include "heintze/selfcheck.hpp"

namespace heintze::cli {

enum Exit : int {
  kOk = 0,
  kPropertyFailure = 1,
  kInvalidInput = 2,
  kOutOfRange = 3,
  kNotDistinguished = 10,
};

inline int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::MuTooSmall:
    case ErrorCode::ParameterOutOfRange:
    case ErrorCode::DegenerateCurve:
    case ErrorCode::ClassTooHigh:
    case ErrorCode::TooLarge:
      return kOutOfRange;
    default:
      return kInvalidInput;
  }
}

struct Options {
  std::vector<std::string> files;
  std::string experiment;
  std::uint64_t seed = 1;
  std::size_t samples = 0;  // 0: experiment default
  std::string mu;
  std::string out_path;
  std::vector<std::string> p_values;
  std::string direction;
  std::string subalgebra;
  std::string element;
};

inline std::string join(const std::vector<std::string>& xs, const std::string& sep = ", ") {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? sep : "") + xs[i];
  return s;
}

inline std::string render(const std::vector<Rational>& xs) {
  std::vector<std::string> s;
  for (const auto& x : xs) s.push_back(to_string(x));
  return "{" + join(s) + "}";
}

inline std::string render(const std::vector<std::size_t>& xs) {
  std::vector<std::string> s;
  for (auto x : xs) s.push_back(std::to_string(x));
  return "[" + join(s) + "]";
}

inline std::string render(const std::vector<EigenJordan>& js) {
  std::vector<std::string> s;
  for (const auto& e : js) s.push_back(to_string(e.eigenvalue) + ": " + render(e.block_sizes));
  return join(s, "; ");
}

inline std::string fmt(double x) {
  std::ostringstream o;
  o << std::setprecision(6) << x;
  return o.str();
}

/// Human text to out, then the JSON report fenced or to --out.
inline void emit(std::ostream& out, const std::string& human, const io::json& report, const std::string& out_path) {
  out << human;
  if (!out_path.empty()) {
    std::ofstream f(out_path);
    if (!f) throw Error(ErrorCode::InvalidInput, "cannot write " + out_path);
    f << io::dump(report);
    out << "report written to " << out_path << "\n";
  } else {
    out << "```json\n" << io::dump(report) << "```\n";
  }
}

inline io::json algebra_report(const NilpotentLieAlgebra& a, std::ostringstream& h) {
  io::json j;
  j["dimension"] = a.dim();
  j["nilpotency_class"] = a.nilpotency_class();
  j["labels"] = a.labels();
  j["center_dim"] = center(a).dim();
  j["derived_dim"] = derived_subalgebra(a).dim();
  j["heisenberg"] = is_heisenberg(a);
  h << "  dimension:        " << a.dim() << "\n"
    << "  nilpotency class: " << a.nilpotency_class() << "\n"
    << "  basis:            " << join(a.labels()) << "\n"
    << "  center dim:       " << center(a).dim() << "\n"
    << "  derived dim:      " << derived_subalgebra(a).dim() << "\n";
  return j;
}

inline io::json heintze_report(const HeintzeData& hd, std::ostringstream& h) {
  io::json j = algebra_report(*hd.algebra, h);
  const auto eig = expand(rational_eigenvalues(hd.matrix()));
  const auto prof = spectrum_profile(hd);
  const bool carnot = is_carnot_type(hd);
  const Subspace u = u_alpha(hd), ha = h_alpha(hd);
  j["eigenvalues"] = io::to_json(eig);
  j["char_poly"] = io::to_json(char_poly(hd.matrix()));
  j["jordan"] = io::to_json(hd.jordan.spectrum);
  j["trace"] = io::to_json(hd.trace);
  j["carnot_type"] = carnot;
  j["u_alpha_dim"] = u.dim();
  j["h_alpha_dim"] = ha.dim();
  j["jump_set"] = io::to_json(jump_set(hd));
  j["profile"] = io::to_json(prof);
  h << "  eigenvalues:      " << render(eig) << "\n"
    << "  char poly:        " << char_poly(hd.matrix()).to_string() << "\n"
    << "  jordan blocks:    " << render(hd.jordan.spectrum) << "\n"
    << "  trace:            " << to_string(hd.trace) << "\n"
    << "  carnot type:      " << (carnot ? "yes" : "no") << "\n"
    << "  dim u_alpha:      " << u.dim() << "\n"
    << "  dim h_alpha:      " << ha.dim() << "\n"
    << "  jump set:         " << render(jump_set(hd)) << "\n"
    << "  profile jumps:    " << render(prof.jump_points) << "\n"
    << "  profile dims:     " << render(prof.dims) << "\n";
  return j;
}

inline int cmd_inspect(const Options& o, std::ostream& out) {
  io::json report = io::json::array();
  std::ostringstream h;
  for (const auto& file : o.files)
    for (const auto& spec : io::load(file).specs) {
      h << spec.name << "\n";
      io::json j = spec.has_derivation() ? heintze_report(spec.heintze(), h) : algebra_report(*spec.algebra, h);
      j["name"] = spec.name;
      report.push_back(std::move(j));
    }
  emit(out, h.str(), report.size() == 1 ? report[0] : report, o.out_path);
  return kOk;
}

inline std::vector<io::Spec> load_specs(const std::vector<std::string>& files) {
  std::vector<io::Spec> specs;
  for (const auto& f : files)
    for (auto& s : io::load(f).specs) specs.push_back(std::move(s));
  return specs;
}

inline int cmd_compare(const Options& o, std::ostream& out) {
  const auto specs = load_specs(o.files);
  if (specs.size() != 2) throw Error(ErrorCode::InvalidInput, "compare needs one pair file or two specifications");
  const HeintzeData a = specs[0].heintze(), b = specs[1].heintze();
  const Verdict v = compare(a, b);
  std::ostringstream h;
  h << specs[0].name << " vs " << specs[1].name << "\n"
    << "  verdict:     " << v.outcome() << "\n"
    << "  scale s:     " << to_string(v.s) << "\n"
    << "  carnot:      " << (v.carnot_first ? "yes" : "no") << " / " << (v.carnot_second ? "yes" : "no") << "\n"
    << "  char polys:  " << v.poly_first.to_string() << " / " << v.poly_second.to_string() << "\n"
    << "  jordan:      " << render(v.jordan_first) << " / " << render(v.jordan_second)
    << (v.jordan_compared ? "" : " (not compared)") << "\n"
    << "  profiles:    " << render(v.profile_first.jump_points) << " " << render(v.profile_first.dims) << " / "
    << render(v.profile_second.jump_points) << " " << render(v.profile_second.dims) << "\n";
  for (const auto& n : v.notes) h << "  note: " << n << "\n";
  io::json j = io::to_json(v);
  j["names"] = {specs[0].name, specs[1].name};
  emit(out, h.str(), j, o.out_path);
  return v.distinguished() ? kOk : kNotDistinguished;
}

inline int cmd_profile(const Options& o, std::ostream& out) {
  const auto specs = load_specs(o.files);
  if (specs.size() != 1) throw Error(ErrorCode::InvalidInput, "profile takes one specification");
  const HeintzeData hd = specs[0].heintze();
  const auto prof = spectrum_profile(hd);
  std::ostringstream h;
  h << specs[0].name << "\n  trace " << to_string(hd.trace) << "\n  interval            dim\n";
  Rational left = 1;
  for (std::size_t i = 0; i < prof.dims.size(); ++i) {
    const std::string right = i < prof.jump_points.size() ? to_string(prof.jump_points[i]) : "inf";
    std::ostringstream iv;
    iv << "(" << to_string(left) << ", " << right << ")";
    h << "  " << std::left << std::setw(20) << iv.str() << prof.dims[i] << "\n";
    if (i < prof.jump_points.size()) left = prof.jump_points[i];
  }
  io::json j = io::to_json(prof);
  j["name"] = specs[0].name;
  j["trace"] = io::to_json(hd.trace);
  io::json points = io::json::array();
  for (const auto& text : o.p_values) {
    const Rational p = parse_rational(text);
    io::json e{{"p", io::to_json(p)}};
    if (auto d = profile_at(prof, p)) {
      e["dim"] = *d;
      h << "  p = " << to_string(p) << ": dim " << *d << "\n";
    } else {
      const std::string why = p < 1 ? "p below 1" : "jump point; the profile is defined on open intervals";
      e["dim"] = nullptr;
      e["note"] = why;
      h << "  p = " << to_string(p) << ": refused (" << why << ")\n";
    }
    points.push_back(std::move(e));
  }
  j["points"] = points;
  emit(out, h.str(), j, o.out_path);
  return kOk;
}

inline double parse_real(const std::string& text) {
  if (text.find('/') != std::string::npos) return parse_rational(text).get_d();
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || !std::isfinite(v)) throw Error(ErrorCode::InvalidInput, "not a number: " + text);
  return v;
}

inline std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

/// Either a 1-based basis index or a comma-separated rational vector.
inline Vector parse_vector_arg(const std::string& text, std::size_t n, const char* what) {
  const auto parts = split_list(text);
  if (parts.size() == 1 && n > 1) {
    const Rational r = parse_rational(parts[0]);
    if (r.get_den() != 1 || r < 1 || r > static_cast<long>(n))
      throw Error(ErrorCode::ParameterOutOfRange, std::string(what) + " index out of range");
    return unit_vector(n, static_cast<std::size_t>(r.get_num().get_ui() - 1));
  }
  if (parts.size() != n) throw Error(ErrorCode::ParameterOutOfRange, std::string(what) + " needs " + std::to_string(n) + " entries");
  Vector v;
  for (const auto& p : parts) v.push_back(parse_rational(p));
  return v;
}

inline int cmd_estimate(const Options& o, std::ostream& out) {
  const auto specs = load_specs(o.files);
  if (specs.size() != 1) throw Error(ErrorCode::InvalidInput, "estimate takes one specification");
  const HeintzeData hd = specs[0].heintze();
  const QuasiMetricModel model = make_model(hd);
  const std::size_t n = hd.dim();
  std::ostringstream h;
  io::json j;
  j["name"] = specs[0].name;
  j["experiment"] = o.experiment;
  j["seed"] = o.seed;
  h << specs[0].name << ": " << o.experiment << " (seed " << o.seed << ")\n";

  if (o.experiment == "hausdorff") {
    const Vector dir = parse_vector_arg(o.direction.empty() ? "1" : o.direction, n, "--direction");
    if (is_zero(dir)) throw Error(ErrorCode::DegenerateCurve, "zero direction");
    const std::size_t samples = o.samples ? o.samples : 20000;
    if (samples < 100) throw Error(ErrorCode::ParameterOutOfRange, "hausdorff needs at least 100 samples");
    const auto est = hausdorff_dim_estimate(model, segment(to_double(dir)), samples);
    j["direction"] = io::to_json(dir);
    j["samples"] = samples;
    j["estimate"] = est.value;
    j["r_min"] = est.r_min;
    j["r_max"] = est.r_max;
    j["residual"] = est.residual;
    io::json pts = io::json::array();
    for (auto [x, y] : est.regression_points) pts.push_back({x, y});
    j["regression_points"] = pts;
    std::optional<Rational> expected;
    for (std::size_t i = 0; i < hd.eigen.spaces.size(); ++i)
      if (eigenspace(hd.matrix(), hd.eigen.eigenvalues[i]).contains(dir)) expected = hd.eigen.eigenvalues[i];
    j["eigenvalue"] = expected ? io::to_json(*expected) : io::json(nullptr);
    h << "  segment direction " << selfcheck::render(dir) << "\n"
      << "  box-counting dimension " << fmt(est.value) << " over r in [" << fmt(est.r_min) << ", "
      << fmt(est.r_max) << "], residual " << fmt(est.residual) << "\n";
    if (expected) h << "  direction is an eigenvector with eigenvalue " << to_string(*expected) << "\n";
  } else if (o.experiment == "lemma31") {
    const double mu = o.mu.empty() ? hd.largest_eigenvalue().get_d() + 1 : parse_real(o.mu);
    const std::size_t samples = o.samples ? o.samples : 100000;
    const auto r = lemma31_check(model, mu, samples, o.seed);
    j["mu"] = mu;
    j["samples"] = r.samples;
    j["rejected"] = r.rejected;
    j["c_hat"] = r.c_hat;
    j["slope"] = r.slope;
    j["violations"] = r.violations;
    j["decade_minimum"] = r.decade_minimum;
    h << "  mu " << fmt(mu) << ", " << r.samples << " samples (" << r.rejected << " rejected)\n"
      << "  c_hat " << fmt(r.c_hat) << ", log-log slope " << fmt(r.slope) << ", decades below the first "
      << r.violations << "\n";
  } else if (o.experiment == "diagsandwich") {
    const double mu = o.mu.empty() ? 1.5 : parse_real(o.mu);
    const std::size_t samples = o.samples ? o.samples : 2000;
    const auto r = diag_comparison_check(model, mu, samples, o.seed);
    j["mu"] = mu;
    j["samples"] = r.samples;
    j["constant"] = r.constant;
    j["lower_constant"] = r.lower_constant;
    j["upper_constant"] = r.upper_constant;
    j["nilpotent_part_zero"] = r.nilpotent_part_zero;
    h << "  mu " << fmt(mu) << ": sandwich constant " << fmt(r.constant)
      << (r.nilpotent_part_zero ? " (derivation is diagonalizable)" : "") << "\n";
  } else if (o.experiment == "cosets") {
    std::vector<Vector> gens;
    for (const auto& part : split_list(o.subalgebra.empty() ? "1" : o.subalgebra)) {
      const Rational r = parse_rational(part);
      if (r.get_den() != 1 || r < 1 || r > static_cast<long>(n))
        throw Error(ErrorCode::ParameterOutOfRange, "--subalgebra index out of range");
      gens.push_back(unit_vector(n, static_cast<std::size_t>(r.get_num().get_ui() - 1)));
    }
    const Subspace sub = Subspace::span(n, gens);
    const Vector x = parse_vector_arg(o.element.empty() ? "2" : o.element, n, "--x");
    const std::size_t samples = o.samples ? o.samples : 2000;
    const auto r = coset_divergence_experiment(hd, model, sub, x, {}, samples, o.seed);
    j["subalgebra"] = io::to_json(sub);
    j["x"] = io::to_json(x);
    j["normalizes"] = r.normalizes;
    j["obstruction"] = r.obstruction ? io::to_json(*r.obstruction) : io::json(nullptr);
    j["t_grid"] = r.t_grid;
    j["distances"] = r.distances;
    j["growth_exponent"] = r.growth_exponent;
    j["max_distance"] = r.max_distance;
    j["reference_exponent"] = 1.0 / hd.largest_eigenvalue().get_d();
    if (r.normalizes) {
      h << "  x normalizes h: coset distance stays bounded, max " << fmt(r.max_distance) << "\n";
    } else {
      h << "  obstruction W = " << selfcheck::render(*r.obstruction) << "\n"
        << "  distance growth exponent " << fmt(r.growth_exponent) << " (1/lambda_max = "
        << fmt(1.0 / hd.largest_eigenvalue().get_d()) << ")\n";
    }
  } else if (o.experiment == "triangle") {
    const std::size_t samples = o.samples ? o.samples : 10000;
    const double k = quasi_triangle_constant(model, samples, o.seed);
    j["samples"] = samples;
    j["constant"] = k;
    h << "  quasi-triangle constant " << fmt(k) << " over " << samples << " triples\n";
  } else {
    throw Error(ErrorCode::ParameterOutOfRange, "unknown experiment '" + o.experiment + "'");
  }
  emit(out, h.str(), j, o.out_path);
  return kOk;
}

inline int cmd_check(const Options& o, std::ostream& out) {
  std::vector<selfcheck::PropertyResult> results;
  if (o.files.empty()) {
    for (const auto& e : selfcheck::default_corpus(o.seed)) {
      auto r = selfcheck::check_heintze(e.name, e.data, o.seed);
      results.insert(results.end(), r.begin(), r.end());
    }
  } else {
    for (const auto& file : o.files) {
      io::Document doc;
      try {
        doc = io::load(file);
      } catch (const Error& e) {
        switch (e.code()) {
          case ErrorCode::AntisymmetryViolation:
          case ErrorCode::JacobiViolation:
          case ErrorCode::NotNilpotent:
          case ErrorCode::LeibnizViolation:
            results.push_back({file, "load", false, false, e.what()});
            continue;
          default:
            throw;
        }
      }
      for (const auto& spec : doc.specs) {
        if (!spec.has_derivation()) {
          auto r = selfcheck::check_algebra(spec.name, *spec.algebra);
          results.insert(results.end(), r.begin(), r.end());
          continue;
        }
        try {
          auto r = selfcheck::check_heintze(spec.name, spec.heintze(), o.seed);
          results.insert(results.end(), r.begin(), r.end());
        } catch (const Error& e) {
          if (e.code() != ErrorCode::LeibnizViolation) throw;
          results.push_back({spec.name, "leibniz", false, false, e.what()});
        }
      }
    }
  }
  std::ostringstream h;
  io::json list = io::json::array();
  std::size_t failed = 0, skipped = 0;
  for (const auto& r : results) {
    const char* status = r.skipped ? "SKIP" : r.passed ? "PASS" : "FAIL";
    if (!r.passed) ++failed;
    if (r.skipped) ++skipped;
    h << "  [" << status << "] " << r.subject << " " << r.property;
    if (!r.passed || r.skipped) h << ": " << r.detail;
    h << "\n";
    list.push_back({{"subject", r.subject}, {"property", r.property}, {"status", std::string(status)}, {"detail", r.detail}});
  }
  h << results.size() << " checks, " << failed << " failed, " << skipped << " skipped\n";
  io::json j{{"results", list}, {"failed", failed}, {"total", results.size()}, {"seed", o.seed}};
  emit(out, h.str(), j, o.out_path);
  return failed == 0 ? kOk : kPropertyFailure;
}

/// Entry point shared by the executable and the tests; args excludes argv[0].
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quasi-isometry invariants of purely real Heintze groups"};
  app.name("heintze");
  app.require_subcommand(1);
  Options o;

  auto* inspect = app.add_subcommand("inspect", "Report the invariants of a specification");
  inspect->add_option("files", o.files, "input files")->required();

  auto* cmp = app.add_subcommand("compare", "Decide whether the invariants separate two groups");
  cmp->add_option("files", o.files, "a pair file, or two specification files")->required()->expected(1, 2);

  auto* profile = app.add_subcommand("profile", "Spectrum dimension profile");
  profile->add_option("file", o.files, "input file")->required()->expected(1);
  profile->add_option("--p", o.p_values, "values of p to evaluate")->delimiter(',');

  auto* estimate = app.add_subcommand("estimate", "Numeric experiments on the model quasi-metric");
  estimate->add_option("experiment", o.experiment, "hausdorff | lemma31 | diagsandwich | cosets | triangle")
      ->required();
  estimate->add_option("file", o.files, "input file")->required()->expected(1);
  estimate->add_option("--direction", o.direction, "segment direction: basis index or vector");
  estimate->add_option("--subalgebra", o.subalgebra, "basis indices spanning the subalgebra (cosets)");
  estimate->add_option("--x", o.element, "log of the group element: basis index or vector (cosets)");

  auto* check = app.add_subcommand("check", "Run the invariant suite on the built-in corpus or on files");
  check->add_option("files", o.files, "input files");

  for (auto* sub : {inspect, cmp, profile, estimate, check}) {
    sub->add_option("--out", o.out_path, "write the JSON report here");
    sub->add_option("--seed", o.seed, "64-bit seed");
  }
  for (auto* sub : {estimate}) {
    sub->add_option("--samples", o.samples, "sample count");
    sub->add_option("--mu", o.mu, "exponent (rational or decimal)");
  }

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalidInput;
  }

  try {
    if (inspect->parsed()) return cmd_inspect(o, out);
    if (cmp->parsed()) return cmd_compare(o, out);
    if (profile->parsed()) return cmd_profile(o, out);
    if (estimate->parsed()) return cmd_estimate(o, out);
    if (check->parsed()) return cmd_check(o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  }
  return kInvalidInput;
}

}  // namespace heintze::cli

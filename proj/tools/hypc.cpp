#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "hypc/json_io.hpp"
#include "hypc/quadrature.hpp"
#include "hypc/suites.hpp"

namespace {

using hypc::Json;

enum Exit { kOk = 0, kChecksFailed = 1, kUsage = 2, kEvaluation = 3 };

struct Options {
  std::string a, b, a2, b2, z, t, grid;
  std::string point;
  std::string engine = "auto";
  std::string suite;
  std::string out = "json";
  double tol_rel = 1e-6;
  double tol_abs = 1e-8;
  double tol = 1e-8;
  int max_k = 200;
  int samples = 20;
  std::uint64_t seed = 42;
};

int thread_cap() {
  const char* env = std::getenv("HYPC_THREADS");
  if (!env) return 1;
  try {
    return std::max(1, std::stoi(env));
  } catch (const std::exception&) {
    return 1;
  }
}

hypc::EvalOptions eval_options(const Options& o) {
  hypc::EvalOptions opts;
  if (o.engine == "series") opts.engine = hypc::EngineChoice::Series;
  else if (o.engine == "quad") opts.engine = hypc::EngineChoice::Quad;
  else if (o.engine == "auto") opts.engine = hypc::EngineChoice::Auto;
  else throw hypc::Error(hypc::ErrorKind::ParseError, "engine must be auto, series or quad");
  opts.quad.tol_rel = o.tol_rel;
  opts.quad.tol_abs = o.tol_abs;
  opts.quad.max_k = o.max_k;
  return opts;
}

hypc::GParams params_of(const std::string& a, const std::string& b) {
  return hypc::GParams(hypc::parse_lambda_list(a), hypc::parse_lambda_list(b));
}

void print(const Json& j) { std::cout << j.dump(2) << '\n'; }

int cmd_gamma(const Options& o) {
  const hypc::LambdaPoint x = hypc::parse_lambda(o.point);
  Json j = hypc::to_json(hypc::gamma_c(x));
  j["point"] = hypc::format_lambda(x);
  print(j);
  return kOk;
}

int cmd_eval(const Options& o) {
  const hypc::GParams g = params_of(o.a, o.b);
  const hypc::cplx z = hypc::parse_complex(o.z);
  const hypc::EvalOptions opts = eval_options(o);
  print(hypc::to_json(hypc::g_eval(g, z, opts)));
  return kOk;
}

int cmd_verify(const Options& o) {
  const hypc::VerificationReport r = hypc::run_suite(o.suite, o.samples, o.seed, o.tol, thread_cap());
  print(hypc::to_json(r));
  return r.passed ? kOk : kChecksFailed;
}

struct Axis {
  double lo, hi;
  int n;
  double at(int i) const { return n == 1 ? lo : lo + (hi - lo) * i / (n - 1); }
};

Axis parse_axis(std::string_view text) {
  const auto c1 = text.find(':');
  const auto c2 = text.find(':', c1 == std::string_view::npos ? c1 : c1 + 1);
  if (c1 == std::string_view::npos || c2 == std::string_view::npos)
    throw hypc::Error(hypc::ErrorKind::ParseError, "grid axis must be lo:hi:n");
  Axis a{hypc::detail::parse_signed(text.substr(0, c1)), hypc::detail::parse_signed(text.substr(c1 + 1, c2 - c1 - 1)),
         hypc::detail::parse_int(text.substr(c2 + 1))};
  if (a.n < 1) throw hypc::Error(hypc::ErrorKind::ParseError, "grid axis needs n >= 1");
  return a;
}

// Rows scan Re z fastest. Points the engine rejects keep their row with the error kind.
int cmd_table(const Options& o) {
  const auto comma = o.grid.find(',');
  if (comma == std::string::npos) throw hypc::Error(hypc::ErrorKind::ParseError, "grid must be re_lo:re_hi:n,im_lo:im_hi:n");
  const Axis re = parse_axis(std::string_view(o.grid).substr(0, comma));
  const Axis im = parse_axis(std::string_view(o.grid).substr(comma + 1));
  const hypc::GParams g = params_of(o.a, o.b);
  const hypc::EvalOptions opts = eval_options(o);

  Json rows = Json::array();
  std::ostringstream csv;
  csv.precision(17);
  csv << "re_z,im_z,re_G,im_G,abs_err,engine\n";
  for (int j = 0; j < im.n; ++j)
    for (int i = 0; i < re.n; ++i) {
      const hypc::cplx z(re.at(i), im.at(j));
      hypc::cplx value(NAN, NAN);
      double err = NAN;
      std::string engine;
      try {
        const hypc::EvalResult r = hypc::g_eval(g, z, opts);
        value = r.value;
        err = r.abs_error_estimate;
        engine = hypc::engine_name(r.engine);
      } catch (const hypc::Error& e) {
        engine = "error:" + std::string(hypc::kind_name(e.kind()));
      }
      csv << z.real() << ',' << z.imag() << ',' << value.real() << ',' << value.imag() << ',' << err << ',' << engine
          << '\n';
      rows.push_back(Json{{"z", hypc::to_json(z)}, {"value", hypc::to_json(value)}, {"error", err}, {"engine", engine}});
    }
  if (o.out == "csv") std::cout << csv.str();
  else print(Json{{"rows", rows}});
  return kOk;
}

int cmd_convolve(const Options& o) {
  const hypc::cplx t = hypc::parse_complex(o.t);
  if (t == hypc::cplx(0.0, 0.0)) throw hypc::Error(hypc::ErrorKind::ParseError, "t must be nonzero");
  const hypc::GParams g1 = params_of(o.a, o.b);
  const hypc::GParams g2 = params_of(o.a2.empty() ? o.a : o.a2, o.b2.empty() ? o.b : o.b2);
  const hypc::ConvolutionResult c = hypc::convolve_g(g1, g2, t);
  const hypc::GParams merged(hypc::concat(g1.a_list(), g2.a_list()), hypc::concat(g1.b_list(), g2.b_list()));
  const hypc::EvalResult m = hypc::g_eval(merged, t, eval_options(o));
  print(Json{{"integral", hypc::to_json(c.value)},
             {"integral_error", c.abs_error_estimate},
             {"merged", hypc::to_json(m.value)},
             {"merged_engine", hypc::engine_name(m.engine)},
             {"difference", std::abs(c.value - m.value)}});
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Meijer-type G-functions with lattice parameters on C"};
  app.require_subcommand(1);
  Options o;

  auto add_params = [&](CLI::App* sub) {
    sub->add_option("--a", o.a, "a-parameters, e.g. \"0:0.5:0;1:0.8:0.1\"");
    sub->add_option("--b", o.b, "b-parameters");
  };
  auto add_engine = [&](CLI::App* sub) {
    sub->add_option("--engine", o.engine, "auto, series or quad")->capture_default_str();
    sub->add_option("--tol-rel", o.tol_rel, "quadrature relative tolerance")->capture_default_str();
    sub->add_option("--tol-abs", o.tol_abs, "quadrature absolute tolerance")->capture_default_str();
    sub->add_option("--max-k", o.max_k, "largest |k| summed by quadrature")->capture_default_str();
  };

  auto* gamma = app.add_subcommand("gamma", "gamma_c at a lattice point k:sre:sim");
  gamma->add_option("point", o.point, "lattice point")->required();

  auto* eval = app.add_subcommand("eval", "evaluate G at z");
  add_params(eval);
  add_engine(eval);
  eval->add_option("--z", o.z, "argument, e.g. 2+0i")->required();

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("--suite", o.suite, "suite name")->required();
  verify->add_option("--samples", o.samples, "samples per suite")->capture_default_str();
  verify->add_option("--seed", o.seed, "random seed")->capture_default_str();
  verify->add_option("--tol", o.tol, "tolerance for exact checks")->capture_default_str();

  auto* table = app.add_subcommand("table", "tabulate G on a grid");
  add_params(table);
  add_engine(table);
  table->add_option("--grid", o.grid, "re_lo:re_hi:n,im_lo:im_hi:n")->required();
  table->add_option("--out", o.out, "json or csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();

  auto* convolve = app.add_subcommand("convolve", "multiplicative convolution of two G-functions");
  add_params(convolve);
  add_engine(convolve);
  convolve->add_option("--a2", o.a2, "a-parameters of the second factor (default: --a)");
  convolve->add_option("--b2", o.b2, "b-parameters of the second factor (default: --b)");
  convolve->add_option("--t", o.t, "argument")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*gamma) return cmd_gamma(o);
    if (*eval) return cmd_eval(o);
    if (*verify) return cmd_verify(o);
    if (*table) return cmd_table(o);
    if (*convolve) return cmd_convolve(o);
  } catch (const hypc::Error& e) {
    print(hypc::error_json(e));
    const bool usage = e.kind() == hypc::ErrorKind::ParseError || e.kind() == hypc::ErrorKind::UnknownSuite;
    return usage ? kUsage : kEvaluation;
  }
  return kUsage;
}

#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "ultrametric/errors.hpp"
#include "ultrametric/hardy.hpp"
#include "ultrametric/io.hpp"
#include "ultrametric/norms.hpp"
#include "ultrametric/verification.hpp"

namespace ultrametric::cli {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

constexpr int kMinDigits = 10;
constexpr int kMaxDigits = 10000;

int parse_digits(const std::string& text, const std::string& source) {
  std::size_t used = 0;
  long value = 0;
  try {
    value = std::stol(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || value < kMinDigits || value > kMaxDigits) {
    throw ParameterError(source + " must be an integer between " + std::to_string(kMinDigits) +
                         " and " + std::to_string(kMaxDigits) + ", got '" + text + "'");
  }
  return static_cast<int>(value);
}

std::vector<mpq_class> parse_rational_list(const std::string& text, const std::string& flag) {
  std::vector<mpq_class> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    try {
      out.push_back(parse_rational(item));
    } catch (const ParameterError& e) {
      throw ParameterError(flag + ": " + e.what());
    }
  }
  return out;
}

mpq_class parse_flag(const std::string& text, const std::string& flag) {
  try {
    return parse_rational(text);
  } catch (const ParameterError& e) {
    throw ParameterError(flag + ": " + e.what());
  }
}

long to_long(const mpq_class& value, const std::string& flag) {
  if (!is_integer(value) || !value.get_num().fits_slong_p()) {
    throw ParameterError(flag + " expects integers, got " + format_rational(value));
  }
  return value.get_num().get_si();
}

/// Parameter flags shared by the verification subcommands.
struct TheoremFlags {
  std::string theorem = "endpoint";
  std::string p = "2";
  std::string n = "1";
  std::string alpha = "1/2";
  std::string gamma = "0";
  std::string q = "2";
  std::string lambda = "-1/4";
  long trials = 1000;
  std::uint64_t seed = 0;
};

TheoremConfig make_config(const std::string& theorem, const mpq_class& p, const mpq_class& n,
                          const mpq_class& a, const mpq_class& b, long trials,
                          std::uint64_t seed) {
  const long dim = to_long(n, "--n");
  if (dim < 1 || dim > 1024) throw ParameterError("--n must be between 1 and 1024");
  const PAdicParams params(to_long(p, "--p"), static_cast<int>(dim));
  if (theorem == "endpoint") return EndpointConfig(params, a, b, trials, seed);
  return MorreyConfig(params, a, b, trials, seed);
}

void print_text_report(std::ostream& out, const VerificationReport& report, int digits) {
  out << "theoretical_constant\t" << report.theoretical_constant.to_string(digits) << '\n'
      << "extremizer_ratio\t" << report.extremizer_ratio.to_string(digits) << '\n'
      << "max_random_ratio\t" << report.nonnegative.max_ratio.to_string(digits) << '\n';
  if (report.generations) {
    out << "generations\t" << *report.generations << '\n';
  } else {
    out << "max_signed_ratio\t" << report.signed_values.max_ratio.to_string(digits) << '\n'
        << "redraws\t" << report.nonnegative.redraws + report.signed_values.redraws << '\n';
  }
  out << "pass\t" << (report.pass() ? "true" : "false") << '\n';
}

int emit_report(std::ostream& out, const VerificationReport& report, const std::string& format,
                int digits) {
  if (format == "text") {
    print_text_report(out, report, digits);
  } else {
    out << report_to_json(report, digits) << '\n';
  }
  return report.pass() ? kExitOk : kExitFailed;
}

}  // namespace

int default_precision() {
  const char* env = std::getenv("ULTRAMETRIC_PRECISION");
  if (env == nullptr || *env == '\0') return MathContext{}.digits;
  return parse_digits(env, "ULTRAMETRIC_PRECISION");
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hardy operators and weak norms on radial functions over Q_p^n", "ultrametric"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string precision;
  app.add_option("--precision", precision,
                 "Significant decimal digits (default: $ULTRAMETRIC_PRECISION or 60)");

  // norm
  auto* norm_cmd = app.add_subcommand("norm", "Norm of a function spec or of its Hardy image");
  std::string kind = "lq";
  std::string fn_path;
  std::string q_text = "1";
  std::string gamma_text = "0";
  std::string lambda_text;
  std::string hardy_alpha;
  std::string norm_format = "text";
  norm_cmd->add_option("--kind", kind, "lq | weak-lq | morrey | weak-morrey")
      ->check(CLI::IsMember({"lq", "weak-lq", "morrey", "weak-morrey"}));
  norm_cmd->add_option("--fn", fn_path, "Function spec JSON file")->required();
  norm_cmd->add_option("--q", q_text, "Exponent q >= 1");
  norm_cmd->add_option("--gamma", gamma_text, "Weight exponent (Lebesgue kinds)");
  norm_cmd->add_option("--lambda", lambda_text, "Morrey exponent, -1/q <= lambda < 0");
  norm_cmd->add_option("--hardy-alpha", hardy_alpha,
                       "Take the norm of H_alpha f instead of f");
  norm_cmd->add_option("--format", norm_format, "text | json")
      ->check(CLI::IsMember({"text", "json"}));

  // hardy
  auto* hardy_cmd = app.add_subcommand("hardy", "Values of H_alpha f on a range of spheres");
  std::string hardy_fn;
  std::string alpha_text = "0";
  std::optional<long> kmin;
  std::optional<long> kmax;
  std::string hardy_format = "csv";
  hardy_cmd->add_option("--fn", hardy_fn, "Function spec JSON file")->required();
  hardy_cmd->add_option("--alpha", alpha_text, "Order, 0 <= alpha < n");
  hardy_cmd->add_option("--kmin", kmin, "First sphere index (default j0 - 2)");
  hardy_cmd->add_option("--kmax", kmax, "Last sphere index (default jmax + 2)");
  hardy_cmd->add_option("--format", hardy_format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}));

  // verify-endpoint / verify-morrey / search share their parameter flags.
  TheoremFlags endpoint;
  TheoremFlags morrey;
  morrey.theorem = "morrey";
  TheoremFlags search;
  std::string verify_format = "json";
  auto add_common = [&](CLI::App* cmd, TheoremFlags& flags) {
    cmd->add_option("--p", flags.p, "Prime");
    cmd->add_option("--n", flags.n, "Dimension");
    cmd->add_option("--trials", flags.trials, "Random functions per population")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--seed", flags.seed, "Seed for the random populations");
    cmd->add_option("--format", verify_format, "json | text")
        ->check(CLI::IsMember({"json", "text"}));
  };
  auto* endpoint_cmd =
      app.add_subcommand("verify-endpoint", "Check the weak endpoint bound for H_alpha");
  add_common(endpoint_cmd, endpoint);
  endpoint_cmd->add_option("--alpha", endpoint.alpha, "Order, 0 < alpha < n");
  endpoint_cmd->add_option("--gamma", endpoint.gamma, "Weight exponent, n + gamma > 0");

  auto* morrey_cmd =
      app.add_subcommand("verify-morrey", "Check the central Morrey bound for H");
  add_common(morrey_cmd, morrey);
  morrey_cmd->add_option("--q", morrey.q, "Exponent q >= 1");
  morrey_cmd->add_option("--lambda", morrey.lambda, "-1/q <= lambda < 0");

  auto* search_cmd = app.add_subcommand("search", "Hill-climb for functions with large ratio");
  long generations = 50;
  std::string start = "random";
  add_common(search_cmd, search);
  search_cmd->add_option("--theorem", search.theorem, "endpoint | morrey")
      ->check(CLI::IsMember({"endpoint", "morrey"}));
  search_cmd->add_option("--alpha", search.alpha, "Order (endpoint)");
  search_cmd->add_option("--gamma", search.gamma, "Weight exponent (endpoint)");
  search_cmd->add_option("--q", search.q, "Exponent (morrey)");
  search_cmd->add_option("--lambda", search.lambda, "Morrey exponent (morrey)");
  search_cmd->add_option("--generations", generations, "Hill-climbing generations")
      ->check(CLI::PositiveNumber);
  search_cmd->add_option("--start", start, "extremizer | random")
      ->check(CLI::IsMember({"extremizer", "random"}));

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "Verify every cell of a parameter grid (CSV)");
  TheoremFlags sweep;
  sweep.p = "2,3,5";
  sweep.n = "1,2";
  sweep.alpha = "1/2,1";
  sweep.gamma = "0,1";
  sweep.q = "1,2";
  sweep.lambda = "-1/2,-1/4";
  sweep_cmd->add_option("--theorem", sweep.theorem, "endpoint | morrey")
      ->check(CLI::IsMember({"endpoint", "morrey"}));
  sweep_cmd->add_option("--p", sweep.p, "Comma-separated primes");
  sweep_cmd->add_option("--n", sweep.n, "Comma-separated dimensions");
  sweep_cmd->add_option("--alpha", sweep.alpha, "Comma-separated orders (endpoint)");
  sweep_cmd->add_option("--gamma", sweep.gamma, "Comma-separated weights (endpoint)");
  sweep_cmd->add_option("--q", sweep.q, "Comma-separated exponents (morrey)");
  sweep_cmd->add_option("--lambda", sweep.lambda, "Comma-separated Morrey exponents (morrey)");
  sweep_cmd->add_option("--trials", sweep.trials, "Random functions per population")
      ->check(CLI::NonNegativeNumber);
  sweep_cmd->add_option("--seed", sweep.seed, "Seed for every cell");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    const int digits =
        precision.empty() ? default_precision() : parse_digits(precision, "--precision");
    const MathContext ctx{digits};

    if (*norm_cmd) {
      const RadialStepFunction f = read_function_file(fn_path);
      NormSpec spec;
      spec.kind = parse_norm_kind(kind);
      spec.q = parse_flag(q_text, "--q");
      spec.weight.gamma = parse_flag(gamma_text, "--gamma");
      if (spec.kind == NormKind::CentralMorrey || spec.kind == NormKind::WeakCentralMorrey) {
        if (lambda_text.empty()) throw ParameterError("--lambda is required for Morrey norms");
        spec.lambda = parse_flag(lambda_text, "--lambda");
      }
      const NormValue value =
          hardy_alpha.empty()
              ? norm(f, spec, ctx)
              : norm(hardy_apply(f, HardyParams(f.params(), parse_flag(hardy_alpha, "--hardy-alpha"))),
                     spec, ctx);
      if (norm_format == "json") {
        std::ostringstream json;
        json << "{\n  \"kind\": \"" << to_string(spec.kind) << "\",\n  \"value\": \""
             << value.value.to_decimal(digits) << "\",\n  \"exact\": "
             << (value.value.is_exact() ? "true" : "false") << ",\n  \"attainment\": \""
             << value.attainment.describe() << "\"\n}\n";
        out << json.str();
      } else {
        out << value.value.to_string(digits) << '\n';
      }
      return kExitOk;
    }

    if (*hardy_cmd) {
      const RadialStepFunction f = read_function_file(hardy_fn);
      const RadialHardyImage image =
          hardy_apply(f, HardyParams(f.params(), parse_flag(alpha_text, "--alpha")));
      const long lo = kmin.value_or(f.j0() - 2);
      const long hi = kmax.value_or(f.jmax() + 2);
      if (lo > hi) throw ParameterError("--kmin must not exceed --kmax");
      if (hardy_format == "json") {
        out << "[\n";
        for (long k = lo; k <= hi; ++k) {
          const Scalar v = image.value(k, ctx);
          out << "  {\"k\": " << k << ", \"value\": \"" << v.to_decimal(digits)
              << "\", \"exact\": " << (v.is_exact() ? "true" : "false") << '}'
              << (k < hi ? "," : "") << '\n';
        }
        out << "]\n";
      } else {
        out << "k,value,exact\n";
        for (long k = lo; k <= hi; ++k) {
          const Scalar v = image.value(k, ctx);
          out << k << ',' << v.to_decimal(digits) << ',' << (v.is_exact() ? "true" : "false")
              << '\n';
        }
      }
      return kExitOk;
    }

    if (*endpoint_cmd) {
      const TheoremConfig config =
          make_config("endpoint", parse_flag(endpoint.p, "--p"), parse_flag(endpoint.n, "--n"),
                      parse_flag(endpoint.alpha, "--alpha"), parse_flag(endpoint.gamma, "--gamma"),
                      endpoint.trials, endpoint.seed);
      return emit_report(out, verify(config, ctx), verify_format, digits);
    }

    if (*morrey_cmd) {
      const TheoremConfig config =
          make_config("morrey", parse_flag(morrey.p, "--p"), parse_flag(morrey.n, "--n"),
                      parse_flag(morrey.q, "--q"), parse_flag(morrey.lambda, "--lambda"),
                      morrey.trials, morrey.seed);
      return emit_report(out, verify(config, ctx), verify_format, digits);
    }

    if (*search_cmd) {
      const bool is_endpoint = search.theorem == "endpoint";
      const TheoremConfig config = make_config(
          search.theorem, parse_flag(search.p, "--p"), parse_flag(search.n, "--n"),
          is_endpoint ? parse_flag(search.alpha, "--alpha") : parse_flag(search.q, "--q"),
          is_endpoint ? parse_flag(search.gamma, "--gamma") : parse_flag(search.lambda, "--lambda"),
          search.trials, search.seed);
      const VerificationReport report = sharpness_search(
          config, generations, start == "extremizer" ? SearchStart::Extremizer : SearchStart::Random,
          ctx);
      return emit_report(out, report, verify_format, digits);
    }

    // sweep
    const bool is_endpoint = sweep.theorem == "endpoint";
    const auto primes = parse_rational_list(sweep.p, "--p");
    const auto dims = parse_rational_list(sweep.n, "--n");
    const auto firsts = is_endpoint ? parse_rational_list(sweep.alpha, "--alpha")
                                    : parse_rational_list(sweep.q, "--q");
    const auto seconds = is_endpoint ? parse_rational_list(sweep.gamma, "--gamma")
                                     : parse_rational_list(sweep.lambda, "--lambda");
    if (primes.empty() || dims.empty() || firsts.empty() || seconds.empty()) {
      throw ParameterError("empty sweep grid");
    }
    std::vector<SweepRow> rows;
    bool all_pass = true;
    for (const auto& p : primes) {
      for (const auto& n : dims) {
        for (const auto& a : firsts) {
          for (const auto& b : seconds) {
            SweepRow row{{format_rational(p), format_rational(n), format_rational(a),
                          format_rational(b)},
                         std::nullopt,
                         ""};
            try {
              const TheoremConfig config =
                  make_config(sweep.theorem, p, n, a, b, sweep.trials, sweep.seed);
              row.report = verify(config, ctx);
              all_pass = all_pass && row.report->pass();
            } catch (const ParameterError& e) {
              row.reason = e.what();
            }
            rows.push_back(std::move(row));
          }
        }
      }
    }
    const std::vector<std::string> names =
        is_endpoint ? std::vector<std::string>{"p", "n", "alpha", "gamma"}
                    : std::vector<std::string>{"p", "n", "q", "lambda"};
    out << sweep_csv(names, rows, digits);
    return all_pass ? kExitOk : kExitFailed;
  } catch (const DivergenceError& e) {
    err << "error: divergent " << e.tail() << ": " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return kExitUsage;
}

}  // namespace ultrametric::cli

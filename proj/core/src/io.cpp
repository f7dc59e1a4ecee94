#include "ultrametric/io.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ultrametric/errors.hpp"

namespace ultrametric {

using nlohmann::ordered_json;

namespace {

mpq_class rational_field(const ordered_json& node, const char* name) {
  if (node.is_number_integer()) return mpq_class(node.get<long>());
  if (node.is_string()) return parse_rational(node.get<std::string>());
  throw ParameterError(std::string("field '") + name +
                       "' must be a rational string such as \"3/4\" or an integer");
}

long integer_field(const ordered_json& obj, const char* name) {
  if (!obj.contains(name)) throw ParameterError(std::string("missing field '") + name + "'");
  const ordered_json& node = obj.at(name);
  if (!node.is_number_integer()) {
    throw ParameterError(std::string("field '") + name + "' must be an integer");
  }
  return node.get<long>();
}

ordered_json scalar_json(const Scalar& value, int digits) {
  return {{"value", value.to_decimal(digits)},
          {"exact", value.is_exact()},
          {"rational", value.is_exact() ? ordered_json(format_rational(value.exact()))
                                        : ordered_json(nullptr)}};
}

ordered_json function_json(const RadialStepFunction& f) {
  ordered_json rings = ordered_json::array();
  for (const auto& [k, value] : f.rings()) {
    rings.push_back({{"k", k}, {"value", format_rational(value)}});
  }
  return {{"prime", f.params().p()},
          {"dim", f.params().n()},
          {"inner_exp", f.j0()},
          {"inner_value", format_rational(f.inner_value())},
          {"rings", std::move(rings)}};
}

ordered_json population_json(const PopulationResult& population, int digits) {
  return {{"trials", population.trials},
          {"redraws", population.redraws},
          {"max_ratio", scalar_json(population.max_ratio, digits)},
          {"argmax", population.argmax ? function_json(*population.argmax)
                                       : ordered_json(nullptr)}};
}

ordered_json config_json(const TheoremConfig& config) {
  if (const auto* c = std::get_if<EndpointConfig>(&config)) {
    return {{"theorem", "endpoint"},
            {"p", c->params.p()},
            {"n", c->params.n()},
            {"alpha", format_rational(c->alpha)},
            {"gamma", format_rational(c->gamma)},
            {"q", format_rational(c->q())},
            {"trials", c->trials},
            {"seed", c->seed}};
  }
  const auto& c = std::get<MorreyConfig>(config);
  return {{"theorem", "morrey"},
          {"p", c.params.p()},
          {"n", c.params.n()},
          {"q", format_rational(c.q)},
          {"lambda", format_rational(c.lambda)},
          {"trials", c.trials},
          {"seed", c.seed}};
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string function_to_json(const RadialStepFunction& f) { return function_json(f).dump(2); }

RadialStepFunction function_from_json(std::string_view text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const ordered_json::parse_error& e) {
    throw ParameterError(std::string("function spec is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParameterError("function spec must be a JSON object");
  const long prime = integer_field(doc, "prime");
  const long dim = integer_field(doc, "dim");
  if (dim < 1 || dim > 1024) throw ParameterError("dim must be between 1 and 1024");
  const PAdicParams params(prime, static_cast<int>(dim));
  const long j0 = integer_field(doc, "inner_exp");
  if (!doc.contains("inner_value")) throw ParameterError("missing field 'inner_value'");
  const mpq_class inner = rational_field(doc.at("inner_value"), "inner_value");

  std::map<long, mpq_class> rings;
  if (doc.contains("rings")) {
    const ordered_json& list = doc.at("rings");
    if (!list.is_array()) throw ParameterError("field 'rings' must be an array");
    for (const auto& ring : list) {
      if (!ring.is_object() || !ring.contains("value")) {
        throw ParameterError("each ring needs 'k' and 'value'");
      }
      const long k = integer_field(ring, "k");
      if (!rings.emplace(k, rational_field(ring.at("value"), "value")).second) {
        throw ParameterError("ring k = " + std::to_string(k) + " appears twice");
      }
    }
  }
  return {params, j0, inner, std::move(rings)};
}

RadialStepFunction read_function_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot read function spec '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return function_from_json(buffer.str());
}

std::string report_to_json(const VerificationReport& report, int digits) {
  ordered_json doc = {
      {"config", config_json(report.config)},
      {"precision_digits", digits},
      {"tolerances",
       {{"eq", format_rational(report.tolerances.eq.exact())},
        {"excess", format_rational(report.tolerances.excess.exact())}}},
      {"theoretical_constant", scalar_json(report.theoretical_constant, digits)},
      {"extremizer_ratio", scalar_json(report.extremizer_ratio, digits)},
      {"nonnegative", population_json(report.nonnegative, digits)},
  };
  if (report.generations) {
    doc["generations"] = *report.generations;
    ordered_json trace = ordered_json::array();
    for (const Scalar& value : report.search_trace) trace.push_back(value.to_decimal(digits));
    doc["search_trace"] = std::move(trace);
  } else {
    doc["signed"] = population_json(report.signed_values, digits);
  }
  doc["extremizer_ok"] = report.extremizer_ok();
  doc["random_ok"] = report.random_ok();
  doc["pass"] = report.pass();
  return doc.dump(2);
}

std::string sweep_csv(const std::vector<std::string>& parameter_names,
                      const std::vector<SweepRow>& rows, int digits) {
  std::ostringstream out;
  for (const auto& name : parameter_names) out << csv_field(name) << ',';
  out << "theoretical_constant,constant_exact,extremizer_ratio,extremizer_exact,"
         "max_random_ratio,max_random_exact,max_signed_ratio,redraws,pass,reason\n";
  for (const auto& row : rows) {
    for (const auto& value : row.parameters) out << csv_field(value) << ',';
    if (!row.report) {
      out << ",,,,,,,,," << csv_field(row.reason) << '\n';
      continue;
    }
    const VerificationReport& r = *row.report;
    auto flag = [](bool b) { return b ? "true" : "false"; };
    out << r.theoretical_constant.to_decimal(digits) << ','
        << flag(r.theoretical_constant.is_exact()) << ','
        << r.extremizer_ratio.to_decimal(digits) << ',' << flag(r.extremizer_ratio.is_exact())
        << ',' << r.nonnegative.max_ratio.to_decimal(digits) << ','
        << flag(r.nonnegative.max_ratio.is_exact()) << ','
        << r.signed_values.max_ratio.to_decimal(digits) << ','
        << r.nonnegative.redraws + r.signed_values.redraws << ',' << flag(r.pass()) << ','
        << csv_field(row.reason) << '\n';
  }
  return out.str();
}

}  // namespace ultrametric

#include "commands.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <json.hpp>
#include <sstream>

#include "cantorlip/acceptance.hpp"
#include "cantorlip/lipnorms.hpp"
#include "cantorlip/optimization.hpp"
#include "expr.hpp"

#ifndef CANTORLIP_VERSION
#define CANTORLIP_VERSION "0.0.0"
#endif

namespace cantorlip::cli {

namespace {

using Json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

class UsageError : public Error {
 public:
  using Error::Error;
};

struct Globals {
  unsigned precision = 12;
  std::string format = "json";
};

Json value_json(const SeminormValue& v, unsigned digits) {
  Json j;
  j["value_squared"] = to_string(v.squared());
  j["value_decimal"] = v.decimal(digits);
  const auto exact = v.exact();
  j["value_exact"] = exact ? Json(to_string(*exact)) : Json(nullptr);
  return j;
}

Json rational_json(const Rational& q, unsigned digits) {
  return Json{{"exact", to_string(q)}, {"decimal", rational_decimal(q, digits)}};
}

Json scalar_json(const Scalar& z) {
  return Json{{"re", to_string(z.re)}, {"im", to_string(z.im)}, {"text", to_string(z)}};
}

std::string csv_field(const std::string& s) { return '"' + s + '"'; }

// Shared envelope: command echo first, timings last.
class Document {
 public:
  Document(std::string command, const std::vector<std::string>& args) : start_(Clock::now()) {
    doc_["command"] = std::move(command);
    doc_["arguments"] = args;
    doc_["version"] = CANTORLIP_VERSION;
  }
  Json& operator[](const char* key) { return doc_[key]; }
  std::string finish() {
    doc_["timings"] = {{"total_ms", std::chrono::duration<double, std::milli>(Clock::now() - start_).count()}};
    return doc_.dump(2);
  }

 private:
  Json doc_;
  Clock::time_point start_;
};

WalshPolynomial lifted_to(const WalshPolynomial& f, int n) {
  if (n < 0) return f;
  if (static_cast<unsigned>(n) < f.level()) {
    throw UsageError("--n " + std::to_string(n) + " is below the expression level " + std::to_string(f.level()));
  }
  return f.lifted(static_cast<unsigned>(n));
}

void require_json(const Globals& g, const std::string& command) {
  if (g.format != "json") throw UsageError("--format csv is only available for ratio and search, not " + command);
}

Json witness_json(const RatioWitness& w, unsigned level, unsigned digits) {
  if (w.alpha.empty()) return nullptr;
  return Json{{"polynomial", format_polynomial(to_polynomial(w.alpha, level))},
              {"d", rational_json(w.d_value, digits)},
              {"lambda", rational_json(w.lambda_value, digits)}};
}

std::string origin_name(Separator::Origin o) { return o == Separator::Origin::family ? "family" : "random"; }

Json error_document(const std::string& command, const std::string& kind, const std::string& message,
                    int exit_code) {
  Json j;
  j["command"] = command.empty() ? Json(nullptr) : Json(command);
  j["version"] = CANTORLIP_VERSION;
  j["error"] = {{"kind", kind}, {"message", message}, {"exit_code", exit_code}};
  return j;
}

std::string error_kind(const Error& e) {
  if (dynamic_cast<const LevelError*>(&e) != nullptr) return "level_error";
  if (dynamic_cast<const UndefinedPairError*>(&e) != nullptr) return "undefined_pair";
  if (dynamic_cast<const RangeError*>(&e) != nullptr) return "range_error";
  if (dynamic_cast<const DimensionError*>(&e) != nullptr) return "dimension_error";
  if (dynamic_cast<const UnsupportedError*>(&e) != nullptr) return "unsupported";
  return "error";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out) {
  CLI::App app{"Exact Lipschitz seminorms on the Walsh algebra of the Cantor space", "cantorlip"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.set_version_flag("--version", CANTORLIP_VERSION);

  Globals g;
  app.add_option("--precision", g.precision, "Significant digits of decimal output")
      ->check(CLI::Range(1U, 200U))
      ->capture_default_str();
  app.add_option("--format", g.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();

  std::string expr;
  std::string point;
  std::string lip = "both";
  std::string x_text;
  std::string y_text;
  std::string mode = "exact";
  int n = -1;
  unsigned k = 0;
  unsigned max_n = 8;
  std::size_t samples = 10000;
  std::uint64_t seed = 1;
  std::int64_t coeff_bound = 16;

  auto* eval = app.add_subcommand("eval", "Evaluate a polynomial at a point of C_n");
  eval->add_option("--expr", expr, "Walsh polynomial")->required();
  eval->add_option("--point", point, "Bit string, leftmost is x_0")->required();

  auto* norm = app.add_subcommand("norm", "Lipschitz seminorms L_d and L_lambda");
  norm->add_option("--lip", lip, "Seminorm")->check(CLI::IsMember({"d", "lambda", "both"}))->capture_default_str();
  norm->add_option("--expr", expr, "Walsh polynomial")->required();
  norm->add_option("--n", n, "Ambient level (may only lift)")->check(CLI::Range(0, static_cast<int>(kMaxLevel)));

  auto* ek = app.add_subcommand("ek", "Conditional expectation E_k");
  ek->add_option("--k", k, "Level of the subalgebra")->required();
  ek->add_option("--expr", expr, "Walsh polynomial")->required();

  auto* mk = app.add_subcommand("mk", "Monge-Kantorovich distance between Dirac states");
  mk->add_option("--lip", lip, "Seminorm")->check(CLI::IsMember({"d", "lambda"}))->required();
  mk->add_option("--x", x_text, "First point")->required();
  mk->add_option("--y", y_text, "Second point")->required();
  mk->add_option("--n", n, "Ambient level (may only lift)")->check(CLI::Range(1, static_cast<int>(kMaxLevel)));

  auto* ratio = app.add_subcommand("ratio", "Equivalence ratios between L_d and L_lambda");
  ratio->add_option("--n", n, "Level")->required()->check(CLI::Range(1, static_cast<int>(kMaxLevel)));
  ratio->add_option("--mode", mode, "exact or sample")
      ->check(CLI::IsMember({"exact", "sample"}))
      ->capture_default_str();
  ratio->add_option("--samples", samples, "Random vectors in sample mode")->capture_default_str();
  ratio->add_option("--seed", seed, "Sampling seed")->capture_default_str();
  ratio->add_option("--coeff-bound", coeff_bound, "Integer coefficient bound in sample mode")
      ->check(CLI::Range(std::int64_t{1}, std::int64_t{1} << 20))
      ->capture_default_str();

  auto* search = app.add_subcommand("search", "Elements where L_d and L_lambda differ");
  search->add_option("--n", n, "Level")->required()->check(CLI::Range(2, static_cast<int>(kMaxLevel)));
  search->add_option("--samples", samples, "Random vectors")->capture_default_str();
  search->add_option("--seed", seed, "Sampling seed")->capture_default_str();

  auto* selftest = app.add_subcommand("selftest", "Run the acceptance suite");
  selftest->add_option("--max-n", max_n, "Cap on the level sweeps")->check(CLI::Range(2U, 8U))->capture_default_str();

  std::vector<std::string> argv_store;
  argv_store.reserve(args.size() + 1);
  argv_store.emplace_back("cantorlip");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());

  std::string command;
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
    command = app.get_subcommands().front()->get_name();
    Document doc(command, args);
    const unsigned digits = g.precision;

    if (eval->parsed()) {
      require_json(g, command);
      const auto f = parse_polynomial(expr);
      const auto x = parse_point(point);
      if (x.level() < f.level()) {
        throw LevelError("point has " + std::to_string(x.level()) + " coordinates, the expression needs " +
                         std::to_string(f.level()));
      }
      const auto lifted = f.lifted(x.level());
      doc["level"] = lifted.level();
      doc["input"] = format_polynomial(f);
      doc["outputs"] = {{"point", x.to_bits()}, {"value", scalar_json(evaluate(lifted, x))}};
    } else if (norm->parsed()) {
      require_json(g, command);
      const auto f = lifted_to(parse_polynomial(expr), n);
      doc["level"] = f.level();
      doc["input"] = format_polynomial(f);
      Json outputs;
      if (lip != "lambda") outputs["d"] = value_json(lip_d_fast(f), digits);
      if (lip != "d") outputs["lambda"] = value_json(lip_lambda(f), digits);
      doc["outputs"] = outputs;
    } else if (ek->parsed()) {
      require_json(g, command);
      const auto f = parse_polynomial(expr);
      const auto e = conditional_expectation(f, k);
      doc["level"] = f.level();
      doc["input"] = format_polynomial(f);
      doc["outputs"] = {{"k", k}, {"result", format_polynomial(e)}};
    } else if (mk->parsed()) {
      require_json(g, command);
      const auto x = parse_point(x_text);
      const auto y = parse_point(y_text);
      if (x.level() != y.level()) throw UsageError("--x and --y must have the same number of coordinates");
      if (n >= 0 && static_cast<unsigned>(n) < x.level()) {
        throw UsageError("--n " + std::to_string(n) + " is below the point length " + std::to_string(x.level()));
      }
      const unsigned level = n >= 0 ? static_cast<unsigned>(n) : x.level();
      const auto px = x.lifted(level);
      const auto py = y.lifted(level);
      const NormTag tag = lip == "d" ? NormTag::d : NormTag::lambda;
      const auto sol = mk_distance_solution(tag, px, py);
      doc["level"] = level;
      doc["input"] = {{"lip", lip}, {"x", px.to_bits()}, {"y", py.to_bits()}};
      Json outputs;
      outputs["status"] = to_string(sol.status);
      outputs["value"] = rational_json(sol.value, digits);
      outputs["optimizer"] = format_polynomial(to_polynomial(sol.optimizer, level));
      outputs["cantor_distance"] = value_json(cantor_distance(px, py), digits);
      outputs["pivots"] = sol.pivots;
      doc["outputs"] = outputs;
    } else if (ratio->parsed()) {
      RatioOptions opts;
      opts.mode = mode == "exact" ? RatioMode::exact : RatioMode::sample;
      opts.samples = samples;
      opts.seed = seed;
      opts.coeff_bound = coeff_bound;
      const auto level = static_cast<unsigned>(n);
      const auto r = equivalence_ratio(level, opts);
      if (g.format == "csv") {
        out << "level,mode,samples,seed,ratio_up,ratio_down,up_witness,down_witness\n"
            << level << ',' << mode << ',' << r.samples << ',' << (opts.mode == RatioMode::sample ? seed : 0) << ','
            << to_string(r.ratio_up) << ',' << to_string(r.ratio_down) << ','
            << csv_field(r.up_witness.alpha.empty() ? "" : format_polynomial(to_polynomial(r.up_witness.alpha, level)))
            << ','
            << csv_field(r.down_witness.alpha.empty() ? ""
                                                      : format_polynomial(to_polynomial(r.down_witness.alpha, level)))
            << '\n';
        return kExitOk;
      }
      doc["level"] = level;
      if (opts.mode == RatioMode::sample) doc["seed"] = seed;
      Json outputs;
      outputs["mode"] = mode;
      outputs["ratio_up"] = rational_json(r.ratio_up, digits);
      outputs["ratio_down"] = rational_json(r.ratio_down, digits);
      outputs["up_witness"] = witness_json(r.up_witness, level, digits);
      outputs["down_witness"] = witness_json(r.down_witness, level, digits);
      if (opts.mode == RatioMode::exact) {
        const auto [up, down] = equivalence_ratio_lp(level);
        outputs["d_vertices"] = r.d_vertices;
        outputs["lambda_vertices"] = r.lambda_vertices;
        outputs["lp_check"] = {{"ratio_up", to_string(up)},
                               {"ratio_down", to_string(down)},
                               {"agrees", up == r.ratio_up && down == r.ratio_down}};
      } else {
        outputs["samples"] = r.samples;
        outputs["bounds"] = "lower";
      }
      doc["outputs"] = outputs;
    } else if (search->parsed()) {
      SearchOptions opts;
      opts.samples = samples;
      opts.seed = seed;
      const auto level = static_cast<unsigned>(n);
      const auto found = find_separators(level, opts);
      if (g.format == "csv") {
        out << "index,origin,polynomial,d_squared,lambda_squared,d_decimal,lambda_decimal\n";
        for (std::size_t i = 0; i < found.size(); ++i) {
          const auto& s = found[i];
          out << i << ',' << origin_name(s.origin) << ',' << csv_field(format_polynomial(s.polynomial)) << ','
              << to_string(s.d_value.squared()) << ',' << to_string(s.lambda_value.squared()) << ','
              << s.d_value.decimal(digits) << ',' << s.lambda_value.decimal(digits) << '\n';
        }
        return kExitOk;
      }
      doc["level"] = level;
      doc["seed"] = seed;
      Json list = Json::array();
      for (const auto& s : found) {
        list.push_back({{"origin", origin_name(s.origin)},
                        {"polynomial", format_polynomial(s.polynomial)},
                        {"d", value_json(s.d_value, digits)},
                        {"lambda", value_json(s.lambda_value, digits)}});
      }
      doc["outputs"] = {{"count", found.size()}, {"separators", list}};
    } else if (selftest->parsed()) {
      require_json(g, command);
      AcceptanceOptions opts;
      opts.max_n = max_n;
      const auto results = run_acceptance(opts);
      bool all = true;
      Json criteria = Json::array();
      Json failures = Json::array();
      Json seconds;
      for (const auto& r : results) {
        all = all && r.passed;
        if (!r.passed) failures.push_back(r.id);
        criteria.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
        seconds[std::to_string(r.id)] = r.seconds;
      }
      doc["max_n"] = max_n;
      doc["outputs"] = {{"passed", all}, {"failures", failures}, {"criteria", criteria}};
      doc["criterion_seconds"] = seconds;
      out << doc.finish() << '\n';
      return all ? kExitOk : kExitComputation;
    }
    out << doc.finish() << '\n';
    return kExitOk;
  } catch (const CLI::Success& e) {
    // --help and --version
    std::ostringstream err;
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    out << error_document(command, "usage", e.what(), kExitUsage).dump(2) << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    Json doc = error_document(command, "parse", e.what(), kExitUsage);
    doc["error"]["position"] = e.position();
    out << doc.dump(2) << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    out << error_document(command, "usage", e.what(), kExitUsage).dump(2) << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    out << error_document(command, error_kind(e), e.what(), kExitComputation).dump(2) << '\n';
    return kExitComputation;
  } catch (const std::exception& e) {
    out << error_document(command, "internal", e.what(), kExitComputation).dump(2) << '\n';
    return kExitComputation;
  }
}

}  // namespace cantorlip::cli

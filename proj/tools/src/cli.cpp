#include "lmzv/cli.hpp"

#include <cstdlib>
#include <functional>
#include <iostream>
#include <set>

#include <CLI11.hpp>

#include "lmzv/error.hpp"

namespace lmzv::cli {

namespace {

using io::Json;
using io::to_json;

Json config_json(const RunConfig& c) {
  return Json{{"p", c.p},         {"n", c.level},         {"r", c.depth},
              {"D", c.degree},    {"seed", c.seed},        {"exp_cap", c.exp_cap},
              {"magnitude", c.magnitude}};
}

RunConfig config_from_json(const Json& j, RunConfig base) {
  try {
    base.p = j.at("p").get<std::uint64_t>();
    base.level = j.at("n").get<std::uint64_t>();
    base.depth = j.at("r").get<std::uint64_t>();
    base.degree = j.at("D").get<std::uint64_t>();
    base.seed = j.at("seed").get<std::uint64_t>();
    base.exp_cap = j.at("exp_cap").get<std::uint64_t>();
    base.magnitude = j.at("magnitude").get<std::int64_t>();
  } catch (const Json::exception& e) {
    throw ParseError(std::string("bad report config: ") + e.what());
  }
  return base;
}

void check_grid_cap(const ResidueGrid& g, const RunConfig& c) {
  if (g.size() > c.size_cap) {
    throw CapExceeded("p^(n r) = " + std::to_string(g.size()) + " exceeds the size cap " + std::to_string(c.size_cap));
  }
}

void check_alphabet_cap(std::uint64_t modulus, const RunConfig& c) {
  if (modulus + 1 > c.alphabet_cap) {
    throw CapExceeded("alphabet size " + std::to_string(modulus + 1) + " exceeds the cap " +
                      std::to_string(c.alphabet_cap));
  }
}

LevelMeasure input_measure(const RunConfig& c) {
  if (c.in) {
    LevelMeasure mu = io::measure_from_json(io::read_file(*c.in));
    check_grid_cap(mu.grid(), c);
    return mu;
  }
  return random_kernel_measure(four_term_kernel(c.p, c.level, c.depth, c.size_cap), c.seed, c.magnitude);
}

// Exponent tuples of length r with sum <= cap, in lexicographic order.
std::vector<std::vector<std::uint64_t>> exponent_tuples(std::size_t r, std::uint64_t cap, bool odd_only) {
  std::vector<std::vector<std::uint64_t>> out;
  std::vector<std::uint64_t> cur(r, 0);
  std::function<void(std::size_t, std::uint64_t)> rec = [&](std::size_t k, std::uint64_t used) {
    if (k == r) {
      if (!odd_only || used % 2 == 1) out.push_back(cur);
      return;
    }
    for (std::uint64_t e = 0; used + e <= cap; ++e) {
      cur[k] = e;
      rec(k + 1, used + e);
    }
  };
  rec(0, 0);
  return out;
}

Json verdict_fields(Json base, const CheckVerdict& v) {
  base.update(to_json(v));
  return base;
}

Json vanishing_section(const LevelMeasure& mu, const RunConfig& c, bool& pass) {
  Json checks = Json::array();
  for (const auto& e : exponent_tuples(mu.grid().depth(), c.exp_cap, true)) {
    const auto cert = make_certificate(std::span(e).first(e.size() - 1), e.back(), mu.grid().prime());
    const CheckVerdict v = vanishing_check(mu, e);
    pass = pass && v.pass;
    checks.push_back(verdict_fields(Json{{"exponents", e}, {"slack", cert.slack}}, v));
  }
  return checks;
}

std::vector<std::uint64_t> coset_levels(std::uint64_t n) {
  std::set<std::uint64_t> levels{std::min<std::uint64_t>(1, n), n};
  return {levels.begin(), levels.end()};
}

// One entry per (modulus level, exponents): the smallest valuation over all
// cosets and the cosets that miss the threshold.
Json coset_section(const LevelMeasure& mu, const RunConfig& c, bool& pass) {
  const ResidueGrid& g = mu.grid();
  Json out = Json::array();
  for (const auto level : coset_levels(g.level())) {
    for (const auto& e : exponent_tuples(g.depth(), c.exp_cap, false)) {
      Valuation worst = Valuation::infinite();
      Json failing = Json::array();
      std::int64_t threshold = 0;
      for (const auto& [index, v] : corollary52_sweep(mu, level, e)) {
        threshold = v.threshold;
        if (v.valuation < worst) worst = v.valuation;
        if (!v.pass) failing.push_back(index);
      }
      const bool ok = failing.empty();
      pass = pass && ok;
      out.push_back(Json{{"modulus_level", level},
                         {"exponents", e},
                         {"valuation", to_json(worst)},
                         {"threshold", threshold},
                         {"pass", ok},
                         {"failing", std::move(failing)}});
    }
  }
  return out;
}

Json lambda_section(const LevelMeasure& mu, const RunConfig& c, bool& pass) {
  const ResidueGrid& g = mu.grid();
  Json out = Json::array();
  for (const auto level : coset_levels(g.level())) {
    const ResidueGrid tg(g.prime(), level, g.depth());
    std::vector<Cell> indices;
    for (std::size_t i = 0; i < tg.size(); ++i) indices.push_back(tg.cell(i));
    for (const auto& e : exponent_tuples(g.depth(), c.exp_cap, false)) {
      const auto report = corollary53_check(corollary_lambda_tables(mu, e, level), indices);
      Valuation worst = Valuation::infinite();
      Json failing = Json::array();
      std::int64_t threshold = 0;
      for (const auto& iv : report.verdicts) {
        threshold = iv.verdict.threshold;
        if (iv.verdict.valuation < worst) worst = iv.verdict.valuation;
        if (!iv.verdict.pass) failing.push_back(iv.index);
      }
      pass = pass && report.pass;
      out.push_back(Json{{"table_level", level},
                         {"exponents", e},
                         {"valuation", to_json(worst)},
                         {"threshold", threshold},
                         {"pass", report.pass},
                         {"failing", std::move(failing)}});
    }
  }
  return out;
}

Json rhombus_section(const LambdaTable& t, bool& pass) {
  const std::size_t r = t.grid().depth();
  const NCSeries product = rhombus_product(t);
  const LambdaTable combination = as_table(four_term(as_measure(t)));
  const bool coefficients_match = product == from_lambda_table(combination, r);
  const NCSeries octagon = octagon_product(rhombus_cocycle(from_lambda_table(t, r)), {});
  const bool octagon_match = octagon == product;
  pass = pass && coefficients_match && octagon_match;
  return Json{{"table", to_json(t)},
              {"four_term", to_json(combination)},
              {"coefficients_match", coefficients_match},
              {"octagon_match", octagon_match},
              {"pass", coefficients_match && octagon_match}};
}

Json filtration_section(const LevelMeasure& mu, std::size_t degree) {
  const NCSeries s = lambda_series_from_measures({{mu.grid().depth(), mu}}, degree);
  const auto report = filtration_check({{mu.grid().level(), s}}, degree);
  Json out = Json::array();
  for (const auto& v : report.verdicts) {
    out.push_back(Json{{"k", v.k}, {"y_pure", v.y_pure}, {"depth", v.depth}, {"lower_central", v.lower_central}});
  }
  return out;
}

Json build_report(const RunConfig& c, const LevelMeasure& input) {
  const ResidueGrid& g = input.grid();
  auto [mu, scale] = clear_denominators(input);
  const bool in_kernel = four_term(mu).is_zero();
  bool pass = in_kernel;

  Json report{{"command", "report"},
              {"config", config_json(c)},
              {"measure", to_json(input)},
              {"scale", scale.get_str()},
              {"in_kernel", in_kernel},
              {"kernel_dimension", four_term_kernel(g.prime(), g.level(), g.depth(), c.size_cap).dimension()}};
  if (in_kernel) {
    report["vanishing"] = vanishing_section(mu, c, pass);
    report["coset_identities"] = coset_section(mu, c, pass);
  } else {
    report["vanishing"] = Json{{"skipped", "measure is not in the four-term kernel"}};
    report["coset_identities"] = Json{{"skipped", "measure is not in the four-term kernel"}};
  }
  report["lambda_identities"] = lambda_section(mu, c, pass);
  if (g.modulus() + 1 <= c.alphabet_cap) {
    report["rhombus"] = rhombus_section(random_lambda_table(g, c.seed, c.magnitude), pass);
    report["filtration"] = filtration_section(mu, c.degree);
  } else {
    report["rhombus"] = Json{{"skipped", "alphabet exceeds cap"}};
    report["filtration"] = Json{{"skipped", "alphabet exceeds cap"}};
  }
  report["pass"] = pass;
  return report;
}

CommandResult finish(Json report, bool pass) {
  report["pass"] = pass;
  return {std::move(report), pass ? exit_pass : exit_fail};
}

}  // namespace

std::uint64_t size_cap_from_env() {
  const char* v = std::getenv("MZV_CAP");
  if (v == nullptr || *v == '\0') return RunConfig{}.size_cap;
  try {
    std::size_t used = 0;
    const auto cap = std::stoull(v, &used);
    if (used == std::string(v).size() && cap > 0) return cap;
  } catch (const std::exception&) {
  }
  throw DomainError(std::string("MZV_CAP must be a positive integer, got \"") + v + "\"");
}

void validate(const RunConfig& c) {
  require_prime(c.p);
  if (c.depth == 0) throw DomainError("--depth must be at least 1");
  if (c.format != "json") throw DomainError("unsupported --format \"" + c.format + "\" (only json)");
  if (c.degree == 0) throw DomainError("--degree must be at least 1");
  if (c.degree > c.degree_cap) {
    throw CapExceeded("--degree " + std::to_string(c.degree) + " exceeds the cap " + std::to_string(c.degree_cap));
  }
  if (c.magnitude < 0) throw DomainError("--magnitude must be non-negative");
  Integer total;
  mpz_ui_pow_ui(total.get_mpz_t(), c.p, c.level * c.depth);
  if (total > Integer(static_cast<unsigned long>(c.size_cap))) {
    throw CapExceeded("p^(n r) = " + total.get_str() + " exceeds the size cap " + std::to_string(c.size_cap));
  }
}

CommandResult cmd_kernel(const RunConfig& c) {
  validate(c);
  const KernelBasis k = four_term_kernel(c.p, c.level, c.depth, c.size_cap);
  bool pass = true;
  for (const auto& v : k.basis) pass = pass && four_term(v).is_zero();
  return finish(Json{{"command", "kernel"}, {"config", config_json(c)}, {"dimension", k.dimension()},
                     {"basis", to_json(k)}},
                pass);
}

CommandResult cmd_vanish(const RunConfig& c) {
  validate(c);
  const LevelMeasure input = input_measure(c);
  auto [mu, scale] = clear_denominators(input);
  const bool in_kernel = four_term(mu).is_zero();
  bool pass = in_kernel;
  Json report{{"command", "vanish"}, {"config", config_json(c)}, {"measure", to_json(input)},
              {"scale", scale.get_str()}, {"in_kernel", in_kernel}};
  report["checks"] = in_kernel ? vanishing_section(mu, c, pass) : Json::array();
  return finish(std::move(report), pass);
}

CommandResult cmd_certificate(const RunConfig& c) {
  if (c.in) {
    const auto cert = io::certificate_from_json(io::read_file(*c.in));
    const bool sound = certificate_is_sound(cert);
    return finish(Json{{"command", "certificate"}, {"certificate", to_json(cert)}, {"sound", sound}}, sound);
  }
  require_prime(c.p);
  if (c.target.empty()) throw DomainError("certificate needs --target n1,...,a");
  const auto cert = make_certificate(std::span(c.target).first(c.target.size() - 1), c.target.back(), c.p);
  return {to_json(cert), exit_pass};
}

CommandResult cmd_check_rhombus(const RunConfig& c) {
  validate(c);
  LambdaTable t = c.in ? io::table_from_json(io::read_file(*c.in))
                       : random_lambda_table(ResidueGrid(c.p, c.level, c.depth), c.seed, c.magnitude);
  check_grid_cap(t.grid(), c);
  check_alphabet_cap(t.grid().modulus(), c);
  if (t.grid().depth() > c.degree_cap) throw CapExceeded("table depth exceeds the degree cap");
  bool pass = true;
  Json report = rhombus_section(t, pass);
  report["command"] = "check-rhombus";
  report["config"] = config_json(c);
  return finish(std::move(report), pass);
}

CommandResult cmd_moments(const RunConfig& c) {
  validate(c);
  const LevelMeasure mu = input_measure(c);
  const std::size_t r = mu.grid().depth();
  Json rows = Json::array();
  for (const auto& e : exponent_tuples(r + 1, c.exp_cap, false)) {
    const ExponentWord w{e};
    const Rational m = moment(mu, w);
    rows.push_back(Json{{"exponents", e},
                        {"moment", to_json(m)},
                        {"lambda", to_json(m / Rational(w.factorial_product()))},
                        {"valuation", to_json(padic_valuation(m, mu.grid().prime()))}});
  }
  return finish(Json{{"command", "moments"}, {"config", config_json(c)}, {"measure", to_json(mu)},
                     {"moments", std::move(rows)}},
                true);
}

CommandResult cmd_report(const RunConfig& c) {
  validate(c);
  Json report = build_report(c, input_measure(c));
  const bool pass = report["pass"].get<bool>();
  return {std::move(report), pass ? exit_pass : exit_fail};
}

CommandResult cmd_verify(const RunConfig& c) {
  if (!c.in) throw DomainError("verify needs --in REPORT");
  const Json stored = io::read_file(*c.in);
  if (!stored.is_object() || stored.value("command", "") != "report") {
    throw ParseError("verify expects a report produced by the report command");
  }
  RunConfig rc = config_from_json(stored.at("config"), c);
  validate(rc);
  const LevelMeasure mu = io::measure_from_json(stored.at("measure"));
  check_grid_cap(mu.grid(), rc);
  const Json fresh = build_report(rc, mu);
  const bool identical = fresh == stored;
  return finish(Json{{"command", "verify"}, {"identical", identical}, {"report_pass", stored.value("pass", false)}},
                identical);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Exact checks for finite-level symmetries of p-adic iterated-integral coefficients", "lmzv"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();

  std::string in_path;
  std::string out_path;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--p", c.p, "prime");
    sub->add_option("--level", c.level, "level n (cells are residues mod p^n)");
    sub->add_option("--depth", c.depth, "depth r (number of coordinates)");
    sub->add_option("--degree", c.degree, "series truncation degree D");
    sub->add_option("--seed", c.seed, "64-bit seed for random inputs");
    sub->add_option("--exp-cap", c.exp_cap, "largest exponent sum to check");
    sub->add_option("--magnitude", c.magnitude, "bound on random coefficients");
    sub->add_option("--format", c.format, "output format")->check(CLI::IsMember({"json"}));
    sub->add_option("--in", in_path, "input file");
    sub->add_option("--out", out_path, "output file (default stdout)");
  };

  using Command = std::function<CommandResult(const RunConfig&)>;
  std::vector<std::pair<CLI::App*, Command>> commands;
  auto add = [&](const char* name, const char* help, Command f) {
    CLI::App* sub = app.add_subcommand(name, help);
    add_common(sub);
    commands.emplace_back(sub, std::move(f));
    return sub;
  };
  add("kernel", "integer basis of the four-term kernel", cmd_kernel);
  add("vanish", "odd-moment vanishing checks on a kernel measure (--in MEASURE or random)", cmd_vanish);
  add("certificate", "emit a vanishing certificate for --target, or check one given with --in", cmd_certificate)
      ->add_option("--target", c.target, "n1,...,a")
      ->delimiter(',');
  add("check-rhombus", "rhombus product against the four-term combination (--in TABLE or random)",
      cmd_check_rhombus);
  add("moments", "moment table of a measure (--in MEASURE or random)", cmd_moments);
  add("report", "all checks on one measure (--in MEASURE or random)", cmd_report);
  add("verify", "re-run a stored report (--in REPORT) and compare", cmd_verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return exit_usage;
  }

  try {
    c.size_cap = size_cap_from_env();
    if (!in_path.empty()) c.in = in_path;
    if (!out_path.empty()) c.out = out_path;
    for (const auto& [sub, f] : commands) {
      if (!sub->parsed()) continue;
      const CommandResult result = f(c);
      if (c.out) {
        io::write_file(*c.out, result.report);
      } else {
        out << io::dump(result.report);
      }
      return result.exit_code;
    }
  } catch (const Error& e) {
    err << "lmzv: " << e.what() << "\n";
    return exit_usage;
  }
  return exit_usage;
}

}  // namespace lmzv::cli

#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "tcq/document.hpp"
#include "tcq/error.hpp"

namespace tcq::cli {

namespace {

using doc::Json;

struct Settings {
  std::string input = "-";
  std::string output;
  bool saturate = false;
  unsigned jobs = 1;
  long cone = -1;
  std::string dot;
  bool integral = false, reduced = false, equidim = false, basic = false;
  long bound = 0;
};

std::string read_input(const std::string& path, std::istream& in) {
  std::ostringstream text;
  if (path == "-") {
    text << in.rdbuf();
  } else {
    std::ifstream file(path);
    if (!file) throw Error(ErrorKind::Usage, "cannot open " + path);
    text << file.rdbuf();
  }
  return text.str();
}

// fn(i) for i < n on up to `jobs` threads; results keep index order and the
// exception of the smallest failing index is rethrown.
template <class T, class F>
std::vector<T> parallel_map(std::size_t n, unsigned jobs, F fn) {
  std::vector<std::optional<T>> results(n);
  std::vector<std::exception_ptr> errors(n);
  auto work = [&](std::size_t start) {
    for (std::size_t i = start; i < n; i += jobs) {
      try {
        results[i] = fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (jobs <= 1 || n <= 1) {
    jobs = 1;
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(work, t);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<T> out;
  for (auto& r : results) out.push_back(std::move(*r));
  return out;
}

std::size_t quotient_cone(const ChowQuotient& cq, long k) {
  if (k < 0 || static_cast<std::size_t>(k) >= cq.fan().size())
    throw Error(ErrorKind::Usage, "--cone " + std::to_string(k) +
                                      " is not a cone of the quotient fan (it has " +
                                      std::to_string(cq.fan().size()) + " cones)");
  return static_cast<std::size_t>(k);
}

Json body(Json d) {
  d.erase("format_version");
  d.erase("command");
  return d;
}

Json fiber_json(const UniversalFamily& fam, std::size_t k) {
  const auto fc = fiber_complex(fam, k);
  const auto pres = basic_monoid(fam, k);
  return doc::fiber_document(fam, fc, pres, tropical_moduli_cone(pres));
}

std::vector<CheckReport> run_checks(const UniversalFamily& fam, const Settings& s,
                                    long bound) {
  const bool any = s.integral || s.reduced || s.equidim || s.basic;
  std::vector<CheckReport> reports;
  if (!any || s.reduced) reports.push_back(check_reduced(fam));
  if (!any || s.integral) reports.push_back(check_integral(fam, bound));
  if (!any || s.equidim) reports.push_back(check_equidimensional(fam));
  if (!any || s.basic) {
    const auto parts = parallel_map<CheckReport>(
        fam.chow().fan().size(), s.jobs,
        [&](std::size_t k) { return check_basic_monoid(fam, k); });
    CheckReport merged;
    merged.name = "basic_monoid";
    for (std::size_t k = 0; k < parts.size(); ++k) {
      const auto& part = parts[k];
      if (part.verdict == CheckReport::Verdict::Fail)
        merged.verdict = CheckReport::Verdict::Fail;
      for (const auto& w : part.witnesses)
        merged.witnesses.push_back(
            {"cone " + std::to_string(k) + ": " + w.description, w.vectors});
    }
    merged.parameters.emplace_back("cones", std::to_string(parts.size()));
    reports.push_back(std::move(merged));
  }
  return reports;
}

Json checks_json(const std::vector<CheckReport>& reports) {
  Json out = Json::array();
  for (const auto& r : reports) out.push_back(doc::to_json(r));
  return out;
}

bool all_passed(const std::vector<CheckReport>& reports) {
  return std::none_of(reports.begin(), reports.end(), [](const CheckReport& r) {
    return r.verdict == CheckReport::Verdict::Fail;
  });
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in,
        std::ostream& out, std::ostream& err) {
  Settings s;
  CLI::App app{"Chow quotients of toric varieties by subtori, as toric stacks", "tcq"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--saturate", s.saturate,
               "replace a non-saturated sublattice by its saturation");
  app.add_option("--jobs", s.jobs, "worker threads for per-cone work")
      ->check(CLI::Range(1u, 256u));
  app.add_option("-o,--output", s.output, "write the document here instead of stdout");

  auto input = [&](CLI::App* sub) {
    sub->add_option("input", s.input, "input document, '-' for stdin");
    return sub;
  };
  auto* validate = input(app.add_subcommand("validate", "check the input fan and sublattice"));
  auto* quotient = input(app.add_subcommand("quotient", "quotient fan G and monoids Q_kappa"));
  auto* mult = input(app.add_subcommand("multiplicities", "multiplicity of every cone"));
  auto* cyc = input(app.add_subcommand("cycle", "cycle over one quotient cone"));
  cyc->add_option("--cone", s.cone, "index of the quotient cone")->required();
  auto* family = input(app.add_subcommand("family", "universal family datum and morphisms"));
  auto* fiber = input(app.add_subcommand("fiber", "fiber complex over one quotient cone"));
  fiber->add_option("--cone", s.cone, "index of the quotient cone")->required();
  fiber->add_option("--dot", s.dot, "also write the component graph to this file");
  auto* check = input(app.add_subcommand("check", "structural checks (all when no flag is given)"));
  check->add_flag("--integral", s.integral);
  check->add_flag("--reduced", s.reduced);
  check->add_flag("--equidim", s.equidim);
  check->add_flag("--basic", s.basic);
  check->add_option("--bound", s.bound, "grade bound of the integrality search")
      ->check(CLI::Range(1l, 64l));
  auto* all = input(app.add_subcommand("all", "every result and check in one document"));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n" << "run with --help for usage\n";
    return 1;
  }

  try {
    const doc::Input parsed = doc::parse_input(read_input(s.input, in), s.saturate);
    const long bound = s.bound > 0 ? s.bound : parsed.options.bound;
    Json result;
    int code = 0;
    if (validate->parsed()) {
      result = doc::validate_document(parsed);
    } else {
      const ChowQuotient cq = quotient_fan(parsed.fan, parsed.sublattice);
      if (quotient->parsed()) {
        result = doc::quotient_document(cq);
      } else if (mult->parsed()) {
        result = doc::multiplicities_document(cq);
      } else if (cyc->parsed()) {
        result = doc::cycle_document(cq, quotient_cone(cq, s.cone));
      } else {
        const UniversalFamily fam = universal_fan(cq);
        if (family->parsed()) {
          result = doc::family_document(fam);
        } else if (fiber->parsed()) {
          const auto k = quotient_cone(cq, s.cone);
          result = fiber_json(fam, k);
          if (!s.dot.empty()) {
            std::ofstream dot(s.dot);
            if (!dot) throw Error(ErrorKind::Usage, "cannot write " + s.dot);
            dot << result["graph"].get<std::string>();
          }
        } else if (check->parsed()) {
          const auto reports = run_checks(fam, s, bound);
          result = Json{{"format_version", doc::kFormatVersion},
                        {"command", "check"},
                        {"reports", checks_json(reports)},
                        {"all_passed", all_passed(reports)}};
          if (!all_passed(reports)) code = exit_code(ErrorKind::VerificationFailed);
        } else if (all->parsed()) {
          const std::size_t n = cq.fan().size();
          Json cycles = Json::array(), fibers = Json::array();
          for (std::size_t k = 0; k < n; ++k)
            cycles.push_back(body(doc::cycle_document(cq, k)));
          for (auto& f : parallel_map<Json>(n, s.jobs, [&](std::size_t k) {
                 return fiber_json(fam, k);
               }))
            fibers.push_back(body(std::move(f)));
          Settings every;
          every.jobs = s.jobs;
          const auto reports = run_checks(fam, every, bound);
          result = Json{{"format_version", doc::kFormatVersion},
                        {"command", "all"},
                        {"validate", body(doc::validate_document(parsed))},
                        {"quotient", body(doc::quotient_document(cq))},
                        {"multiplicities", body(doc::multiplicities_document(cq))},
                        {"cycles", cycles},
                        {"family", body(doc::family_document(fam))},
                        {"fibers", fibers},
                        {"checks", checks_json(reports)},
                        {"all_passed", all_passed(reports)}};
          if (!all_passed(reports)) code = exit_code(ErrorKind::VerificationFailed);
        }
      }
    }
    const std::string text = doc::dump(result);
    if (s.output.empty()) {
      out << text;
    } else {
      std::ofstream file(s.output);
      if (!file) throw Error(ErrorKind::Usage, "cannot write " + s.output);
      file << text;
    }
    return code;
  } catch (const Error& e) {
    err << "error [" << to_string(e.kind()) << "]: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "error [internal]: " << e.what() << "\n";
    return exit_code(ErrorKind::InternalConsistency);
  }
}

}  // namespace tcq::cli

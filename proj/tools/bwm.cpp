#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <thread>

#include "CLI11.hpp"

#include "bwm/bwm.hpp"
#include "bwm/http.hpp"

namespace {

using bwm::io::json;

std::string read_input(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path);
  if (!in) throw bwm::Error(bwm::Errc::Parse, "cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void print(const json& j, bool pretty) { std::cout << (pretty ? j.dump(2) : j.dump()) << '\n'; }

std::optional<bwm::Rational> parse_p(const std::string& p) {
  if (p.empty()) return std::nullopt;
  return bwm::Rational::parse(p);
}

std::vector<std::int64_t> integer_scale(const std::string& text) {
  std::vector<std::int64_t> out;
  for (const auto& v : bwm::io::parse_scale(text)) {
    if (!v.is_integer()) throw bwm::Error(bwm::Errc::InvalidScale, "census scale must be integers");
    out.push_back(v.num());
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Best-worst method prioritization with ordinal-violation checks"};
  app.require_subcommand(1);
  bool pretty = false;
  app.add_flag("--pretty", pretty, "Indent JSON output");

  std::string input = "-";
  std::string p_text;

  auto* solve = app.add_subcommand("solve", "LLSM weights, violation report and condition diagnosis");
  solve->add_option("input", input, "Instance JSON file, or - for stdin");
  solve->add_option("--p", p_text, "Dominance bound p for the condition checks (default: derived)");

  auto* check = app.add_subcommand("check", "Sufficient-condition diagnosis only");
  check->add_option("input", input, "Instance JSON file, or - for stdin");
  check->add_option("--p", p_text, "Dominance bound p (default: derived)");

  bwm::CensusOptions census_opt;
  std::string census_scale = "2..9";
  std::string fixed_p = "2";
  std::string witnesses_path;
  auto* census = app.add_subcommand("census", "Exhaustive enumeration of best-worst matrices");
  census->add_option("--n", census_opt.n, "Number of alternatives")->capture_default_str();
  census->add_option("--scale", census_scale, "Judgment values, e.g. 2..9 or 2,3,5")->capture_default_str();
  census->add_option("--fixed-p", fixed_p, "p used for the fixed-p Theorem 1 count")->capture_default_str();
  census->add_option("--jobs", census_opt.jobs, "Worker threads")->capture_default_str();
  census->add_option("--budget", census_opt.budget, "Maximum number of matrices")->capture_default_str();
  census->add_option("--witnesses", witnesses_path, "Write violating instances as JSON lines");
  census->add_flag("--float-check", census_opt.float_cross_check, "Cross-check every matrix in floating point");

  bwm::McConfig mc_cfg;
  std::string mc_scale = "2..9";
  bool mc_json = false;
  bool no_exact = false;
  auto* mc = app.add_subcommand("mc", "Monte Carlo estimate of the violation probability");
  mc->add_option("--n", mc_cfg.n, "Number of alternatives")->capture_default_str();
  mc->add_option("--scale", mc_scale, "Judgment values")->capture_default_str();
  mc->add_option("--k", mc_cfg.samples, "Number of samples")->capture_default_str();
  mc->add_option("--seed", mc_cfg.seed, "Seed")->capture_default_str();
  mc->add_option("--jobs", mc_cfg.jobs, "Worker threads")->capture_default_str();
  mc->add_flag("--json", mc_json, "JSON report");
  mc->add_flag("--no-exact", no_exact, "Skip the census-based exact probability");

  int port = 8080;
  std::string data_dir = "sessions";
  std::string host = "0.0.0.0";
  auto* serve = app.add_subcommand("serve", "HTTP session API");
  serve->add_option("--port", port, "Port")->capture_default_str();
  serve->add_option("--data", data_dir, "Session directory")->capture_default_str();
  serve->add_option("--host", host, "Bind address")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) {
      const auto inst = bwm::io::parse_bwm(read_input(input));
      const auto doc = bwm::io::solve_document(inst, parse_p(p_text));
      print(doc, pretty);
      return doc["reexamination"]["needed"].get<bool>() ? 2 : 0;
    }
    if (check->parsed()) {
      const auto inst = bwm::io::parse_bwm(read_input(input));
      print(bwm::io::to_json(bwm::diagnose(inst, parse_p(p_text))), pretty);
      return 0;
    }
    if (census->parsed()) {
      census_opt.scale = integer_scale(census_scale);
      census_opt.fixed_p = bwm::Rational::parse(fixed_p);
      const auto report = bwm::enumerate_census(census_opt);
      if (!witnesses_path.empty()) {
        std::ofstream out(witnesses_path);
        for (const auto& w : report.witnesses) out << bwm::io::to_json(w).dump() << '\n';
        if (!out) throw bwm::Error(bwm::Errc::Parse, "cannot write '" + witnesses_path + "'");
      }
      print(bwm::io::to_json(report), pretty);
      return 0;
    }
    if (mc->parsed()) {
      mc_cfg.scale = bwm::io::parse_scale(mc_scale);
      if (no_exact) mc_cfg.exact_budget = 0;
      const auto report = bwm::estimate_violation_probability(mc_cfg);
      if (mc_json) {
        print(bwm::io::to_json(report), pretty);
      } else {
        std::cout << "samples:           " << report.samples << '\n'
                  << "violating:         " << report.violating_count << '\n'
                  << "estimate:          " << report.estimated_probability << '\n';
        if (report.exact_event_probability)
          std::cout << "exact probability: " << *report.exact_event_probability << '\n';
        std::cout << "q (no detection):  " << report.q_no_detection << '\n';
      }
      return 0;
    }
    if (serve->parsed()) {
      bwm::SessionService service(data_dir);
      httplib::Server server;
      bwm::register_routes(server, service);
      std::cerr << "listening on " << host << ':' << port << ", sessions in " << data_dir << '\n';
      if (!server.listen(host, port)) {
        std::cerr << "error: cannot bind " << host << ':' << port << '\n';
        return 1;
      }
      return 0;
    }
  } catch (const bwm::Error& e) {
    std::cerr << bwm::io::error_json(std::string(bwm::errc_name(e.code())), e.what()).dump() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

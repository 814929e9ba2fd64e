// grouplog: exact-arithmetic checks for group logarithms over p-adically
// complete coefficient rings.
//
//   grouplog check --p 2 --group D8 --ring Zp --prec 6 --suite thm16 \
//       --samples 100 --seed 42 [--ext f=2] [--out report.json]
//   grouplog eval "1 - 2*c" --group C2 --ring Zp --p 2 --prec 4 [--log]
//   grouplog char-table D8 [--p 2] [--json]
//
// Exit codes: 0 pass, 1 suite failure, 2 usage/config error, 3 internal
// bug-signal (IntegralityViolation, NoConvergence, IncompleteSearch, ...).
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "grouplog/characters.hpp"
#include "grouplog/elemparse.hpp"
#include "grouplog/suites.hpp"

using namespace grouplog;

namespace {

void load_config_file(const std::string& path, SuiteConfig& cfg) {
  std::ifstream in(path);
  require(in.good(), Err::InvalidArgument, "cannot open config file " + path);
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      while (!s.empty() && std::isspace((unsigned char)s.front())) s.erase(s.begin());
      while (!s.empty() && std::isspace((unsigned char)s.back())) s.pop_back();
      return s;
    };
    std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
    if (key == "p") cfg.p = std::stoull(val);
    else if (key == "group") cfg.group = val;
    else if (key == "ring") cfg.ring = val;
    else if (key == "prec") cfg.prec = (unsigned)std::stoul(val);
    else if (key == "samples") cfg.samples = (unsigned)std::stoul(val);
    else if (key == "seed") cfg.seed = std::stoull(val);
    else if (key == "suite") cfg.suite = val;
    else if (key == "ext_f") cfg.ext_f = (unsigned)std::stoul(val);
    else fail(Err::InvalidArgument, "unknown config key '" + key + "'");
  }
}

unsigned parse_ext(const std::string& s) {
  // accepts "f=<n>" or a bare integer
  std::string t = s;
  if (t.rfind("f=", 0) == 0) t = t.substr(2);
  require(!t.empty() && t.find_first_not_of("0123456789") == std::string::npos,
          Err::InvalidArgument, "bad --ext value '" + s + "'");
  return (unsigned)std::stoul(t);
}

int cmd_check(const SuiteConfig& cfg, const std::string& out_path) {
  Report rep = run_config(cfg);
  std::cout << report_text(rep);
  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::binary);
    require(out.good(), Err::InvalidArgument, "cannot write " + out_path);
    out << report_json(rep);
  }
  return report_exit_code(rep);
}

int cmd_eval(const std::string& expr, const SuiteConfig& cfg, bool with_log) {
  GroupPtr G = build_group(cfg.group, cfg.p);
  unsigned W = with_log ? working_precision(G, cfg.p, cfg.prec) : cfg.prec;
  RingPtr R = make_ring(parse_ring_spec(cfg.ring, cfg.p, std::max(W, cfg.prec)));
  require(!(with_log && R->has_cyclo_layer()), Err::InvalidArgument,
          "--log needs a coefficient ring with a Frobenius lift");
  GrElem x = parse_element(expr, G, R, R->precision());
  std::cout << "elem: " << serialize(gr_reduce_precision(x, cfg.prec)) << "\n";
  std::cout << "phi:  " << serialize(cv_reduce_precision(phi(x), cfg.prec)) << "\n";
  if (with_log) {
    ClassVec L = group_log_unit(x, cfg.prec);
    std::cout << "L:    " << serialize(L) << "\n";
  }
  return 0;
}

int cmd_char_table(const std::string& group, u64 p, bool as_json) {
  GroupPtr G = build_group(group, p);
  const CharTable& T = character_table(G);
  if (as_json) {
    nlohmann::json j;
    j["group"] = G->spec_string();
    j["zeta_order"] = T.pe;
    j["classes"] = nlohmann::json::array();
    for (unsigned K = 0; K < G->num_classes(); ++K) {
      nlohmann::json jc;
      jc["rep"] = G->name(G->class_rep(K));
      jc["size"] = G->classes()[K].size();
      j["classes"].push_back(jc);
    }
    j["irreducibles"] = nlohmann::json::array();
    for (const auto& ch : T.irr) {
      nlohmann::json jc;
      jc["degree"] = ch.degree;
      jc["values"] = nlohmann::json::array();
      for (const auto& v : ch.values) jc["values"].push_back(cyc_to_string(v));
      j["irreducibles"].push_back(jc);
    }
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::cout << "character table of " << G->spec_string() << " (zeta order " << T.pe << ")\n";
  std::cout << "classes:";
  for (unsigned K = 0; K < G->num_classes(); ++K)
    std::cout << "  [" << G->name(G->class_rep(K)) << "]x" << G->classes()[K].size();
  std::cout << "\n";
  for (std::size_t i = 0; i < T.irr.size(); ++i) {
    std::cout << "chi" << i << " (deg " << T.irr[i].degree << "):";
    for (const auto& v : T.irr[i].values) std::cout << "  " << cyc_to_string(v);
    std::cout << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact group-logarithm and determinant checks for p-adic group rings"};
  app.require_subcommand(1);

  SuiteConfig cfg;
  std::string out_path, config_path, ext_spec, expr, table_group;
  bool with_log = false, table_json = false;

  CLI::App* check = app.add_subcommand("check", "run theorem suites");
  check->add_option("--p", cfg.p, "prime");
  check->add_option("--group", cfg.group, "group spec (C4, C2xC2, D8, Q8, Q16, SD16, H27, ...)");
  check->add_option("--ring", cfg.ring, "ring spec (Zp, unram:<f>, powser:<D>, cyc:<e>@<base>)");
  check->add_option("--prec", cfg.prec, "declared precision n in [2,16]");
  check->add_option("--suite", cfg.suite, "suite id or 'all'");
  check->add_option("--samples", cfg.samples, "samples per suite in [1,10000]");
  check->add_option("--seed", cfg.seed, "rng seed");
  check->add_option("--ext", ext_spec, "extension degree, e.g. f=2 (descent suites)");
  check->add_option("--out", out_path, "write the canonical JSON report here");
  check->add_option("--config", config_path, "flat key=value config file (flags override)");

  CLI::App* ev = app.add_subcommand("eval", "evaluate an element expression");
  ev->add_option("expr", expr, "element expression")->required();
  ev->add_option("--p", cfg.p, "prime");
  ev->add_option("--group", cfg.group, "group spec");
  ev->add_option("--ring", cfg.ring, "ring spec");
  ev->add_option("--prec", cfg.prec, "precision");
  ev->add_flag("--log", with_log, "also print the group logarithm (needs 1 + I input)");

  CLI::App* ct = app.add_subcommand("char-table", "print the character table");
  ct->add_option("group", table_group, "group spec")->required();
  ct->add_option("--p", cfg.p, "prime (default 2, or 3 for 3-groups)");
  ct->add_flag("--json", table_json, "JSON output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (check->parsed()) {
      if (!config_path.empty()) {
        SuiteConfig base;
        load_config_file(config_path, base);
        SuiteConfig merged = base;
        // flags given on the command line override the file
        if (check->count("--p")) merged.p = cfg.p;
        if (check->count("--group")) merged.group = cfg.group;
        if (check->count("--ring")) merged.ring = cfg.ring;
        if (check->count("--prec")) merged.prec = cfg.prec;
        if (check->count("--suite")) merged.suite = cfg.suite;
        if (check->count("--samples")) merged.samples = cfg.samples;
        if (check->count("--seed")) merged.seed = cfg.seed;
        if (check->count("--ext")) merged.ext_f = parse_ext(ext_spec);
        cfg = merged;
      } else if (!ext_spec.empty()) {
        cfg.ext_f = parse_ext(ext_spec);
      }
      return cmd_check(cfg, out_path);
    }
    if (ev->parsed()) {
      // groups whose prime is 3 need --p 3; default guess for H27
      if (!ev->count("--p") && (cfg.group == "H27" || cfg.group == "h27")) cfg.p = 3;
      return cmd_eval(expr, cfg, with_log);
    }
    if (ct->parsed()) {
      u64 p = cfg.p;
      if (!ct->count("--p")) {
        std::string up = table_group;
        for (auto& ch : up) ch = (char)std::toupper((unsigned char)ch);
        if (up == "H27" || up == "C9" || up == "C3" || up == "C27" || up == "C3XC3") p = 3;
      }
      return cmd_char_table(table_group, p, table_json);
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.is_bug() ? 3 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}

#include "peisert/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "peisert/compare.hpp"
#include "peisert/critgrp.hpp"
#include "peisert/graphs.hpp"
#include "peisert/zlinalg.hpp"

namespace peisert::cli {

namespace {

using nlohmann::json;

struct RunConfig {
  std::optional<std::uint64_t> q;
  std::optional<std::uint32_t> p;
  std::optional<std::uint32_t> t;
  std::optional<std::uint32_t> n;
  std::string graph = "peisert";
  std::string method = "formula";
  std::optional<std::uint32_t> precision;
  std::string format = "json";
  std::string out_path;
  unsigned jobs = 0;
  bool force = false;
  bool omit_blocks = false;
  std::string suite;
  std::string matrix = "laplacian";
  std::string samples;
};

constexpr std::uint64_t kSnfLimit = 400;

// Thrown for a failed check so the command can exit with status 1.
struct CheckFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Field {
  std::uint32_t p = 0;
  std::uint32_t n = 0;
  std::uint64_t q = 0;
};

Field resolve_field(const RunConfig& cfg, bool need_even) {
  Field f;
  if (cfg.q) {
    const PrimePower pp = split_prime_power(*cfg.q);
    f.p = pp.p;
    f.n = pp.n;
    if ((cfg.p && *cfg.p != f.p) || (cfg.t && 2 * *cfg.t != f.n) || (cfg.n && *cfg.n != f.n))
      throw std::invalid_argument("--q disagrees with --p/--t/--n");
  } else if (cfg.p && (cfg.t || cfg.n)) {
    f.p = *cfg.p;
    if (cfg.t && cfg.n && *cfg.n != 2 * *cfg.t) throw std::invalid_argument("--n disagrees with --t");
    f.n = cfg.t ? 2 * *cfg.t : *cfg.n;
  } else {
    throw std::invalid_argument("give --q, or --p with --t");
  }
  if (!is_prime(f.p)) throw std::invalid_argument(std::to_string(f.p) + " is not prime");
  if (f.n == 0) throw std::invalid_argument("extension degree must be positive");
  f.q = 1;
  for (std::uint32_t i = 0; i < f.n; ++i) {
    f.q *= f.p;
    if (f.q > kDefaultFieldCap) throw std::invalid_argument("q exceeds the field size cap");
  }
  if (need_even && (f.n % 2 != 0 || f.p % 4 != 3))
    throw std::invalid_argument("this command needs q = p^(2t) with p == 3 (mod 4)");
  return f;
}

void check_kind(const Field& f, GraphKind kind) {
  if (kind == GraphKind::Peisert && (f.p % 4 != 3 || f.n % 2 != 0))
    throw std::invalid_argument("Peisert graphs need q = p^(2t) with p == 3 (mod 4); got q = " + std::to_string(f.q));
  if (kind == GraphKind::Paley && f.q % 4 != 1)
    throw std::invalid_argument("Paley graphs need q == 1 (mod 4); got q = " + std::to_string(f.q));
}

void guard_snf(const RunConfig& cfg, std::uint64_t q) {
  if (q > kSnfLimit && !cfg.force)
    throw std::invalid_argument("brute-force SNF refused for q = " + std::to_string(q) + " > " +
                                std::to_string(kSnfLimit) + " (pass --force to override)");
}

json profiles_json(const std::map<std::uint64_t, DivisorProfile>& profiles) {
  json out = json::object();
  for (const auto& [p, prof] : profiles) {
    json m = json::object();
    for (const auto& [e, mult] : prof.mult)
      if (e > 0 && mult > 0) m[std::to_string(e)] = mult;
    out[std::to_string(p)] = m;
  }
  return out;
}

json group_json(const AbelianGroup& g) {
  json f = json::array();
  for (const auto& d : g.invariant_factors) f.push_back(d.get_str());
  return {{"invariant_factors", f}, {"free_rank", g.free_rank}};
}

json block_json(const BlockReport& b) {
  return {{"rep", b.rep},       {"class", b.members},          {"list1", b.list1},
          {"list2", b.list2},   {"chosen", b.chosen == 1 ? "list1" : "list2"},
          {"tie", b.tie},       {"method", to_string(b.method)}, {"exponents", b.exponents}};
}

json report_json(const Report& r) {
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"status", to_string(c.status)}, {"detail", c.detail}});
  return {{"suite", r.suite}, {"q", r.q}, {"passed", r.passed()}, {"checks", checks}};
}

std::string group_text(const AbelianGroup& g, const std::map<std::uint64_t, DivisorProfile>& profiles) {
  std::ostringstream out;
  bool first = true;
  for (const auto& [p, prof] : profiles)
    for (const auto& [e, mult] : prof.mult) {
      if (e == 0 || mult == 0) continue;
      out << (first ? "" : " + ") << "(Z/" << p;
      if (e > 1) out << "^" << e;
      out << ")^" << mult;
      first = false;
    }
  if (first) out << "0";
  if (g.free_rank) out << " + Z^" << g.free_rank;
  return out.str();
}

std::string report_text(const Report& r) {
  std::ostringstream out;
  out << r.suite << " (q = " << r.q << "): " << (r.passed() ? "PASS" : "FAIL") << "\n";
  for (const auto& c : r.checks) {
    out << "  [" << to_string(c.status) << "] " << c.name;
    if (!c.detail.empty()) out << ": " << c.detail;
    out << "\n";
  }
  return out.str();
}

// A command produces a JSON document and a text rendering of it.
struct Output {
  json doc;
  std::string text;
  bool ok = true;
  std::string failure;
};

Output cmd_field(const RunConfig& cfg) {
  const Field f = resolve_field(cfg, false);
  const FieldTable F = build_field(f.p, f.n);
  Output o;
  o.doc = {{"p", f.p}, {"n", f.n}, {"q", f.q}, {"modulus", F.modulus()}, {"beta", F.beta()}};
  std::ostringstream t;
  t << "GF(" << f.q << "): p = " << f.p << ", n = " << f.n << ", modulus coefficients (a_0..a_n):";
  for (auto c : F.modulus()) t << " " << c;
  t << ", beta = " << F.beta() << "\n";
  for (GraphKind kind : {GraphKind::Peisert, GraphKind::Paley}) {
    try {
      const auto conn = connection_set(F, kind);
      o.doc["connection_sets"][to_string(kind)] = conn;
      t << to_string(kind) << " connection set size " << conn.size() << "\n";
    } catch (const std::invalid_argument&) {
    }
  }
  o.text = t.str();
  return o;
}

Output cmd_critgroup(const RunConfig& cfg) {
  const GraphKind kind = parse_graph_kind(cfg.graph);
  const Method method = parse_method(cfg.method);
  const Field f = resolve_field(cfg, false);
  check_kind(f, kind);
  if (method != Method::Formula) guard_snf(cfg, f.q);
  CriticalGroupOptions opts;
  opts.method = method;
  opts.jobs = cfg.jobs;
  opts.precision = cfg.precision;
  const CriticalGroupResult res = critical_group(f.p, f.n, kind, opts);
  if (res.spanning_trees != group_order(res.group))
    throw CheckFailed("critical group order differs from the spanning tree count");
  Output o;
  o.doc = {{"q", res.q},
           {"graph", to_string(kind)},
           {"method", to_string(method)},
           {"critical_group", group_json(res.group)},
           {"elementary_divisors", profiles_json(res.profiles)},
           {"p_rank", res.p_rank},
           {"spanning_trees", res.spanning_trees.get_str()}};
  json blocks = json::array();
  if (!cfg.omit_blocks)
    for (const auto& b : res.blocks) blocks.push_back(block_json(b));
  o.doc["blocks"] = blocks;
  std::ostringstream t;
  t << "K(" << to_string(kind) << "(" << res.q << ")) = " << group_text(res.group, res.profiles) << "\n"
    << "p-rank " << res.p_rank << "\nspanning trees " << res.spanning_trees.get_str() << "\n";
  o.text = t.str();
  return o;
}

Output cmd_smithgroup(const RunConfig& cfg) {
  const GraphKind kind = parse_graph_kind(cfg.graph);
  const Method method = parse_method(cfg.method);
  const Field f = resolve_field(cfg, false);
  check_kind(f, kind);
  std::optional<AbelianGroup> formula, brute;
  if (method != Method::Snf) {
    if (kind != GraphKind::Peisert) throw std::invalid_argument("the Smith group formula applies to Peisert graphs only");
    formula = smith_group_formula(CarryContext(f.p, f.n / 2));
  }
  if (method != Method::Formula) {
    guard_snf(cfg, f.q);
    const FieldTable F = build_field(f.p, f.n);
    brute = smith_normal_form(adjacency(F, kind)).cokernel;
  }
  if (formula && brute && !(*formula == *brute)) throw CheckFailed("formula and SNF Smith groups differ");
  const AbelianGroup& g = formula ? *formula : *brute;
  Output o;
  o.doc = {{"q", f.q},
           {"graph", to_string(kind)},
           {"method", to_string(method)},
           {"smith_group", group_json(g)},
           {"elementary_divisors", profiles_json(g.profiles(f.q))}};
  o.text = "S(" + std::string(to_string(kind)) + "(" + std::to_string(f.q) + ")) = " + group_text(g, g.profiles(f.q)) + "\n";
  return o;
}

Output cmd_prank(const RunConfig& cfg) {
  const Method method = parse_method(cfg.method);
  const GraphKind kind = parse_graph_kind(cfg.graph);
  const Field f = resolve_field(cfg, false);
  check_kind(f, kind);
  std::optional<std::uint64_t> formula, brute;
  if (method != Method::Snf) {
    if (kind != GraphKind::Peisert) throw std::invalid_argument("the p-rank formula applies to Peisert graphs only");
    formula = p_rank_formula(CarryContext(f.p, f.n / 2));
  }
  if (method != Method::Formula) {
    const FieldTable F = build_field(f.p, f.n);
    brute = rank_mod_p(laplacian(adjacency(F, kind)), f.p);
  }
  if (formula && brute && *formula != *brute)
    throw CheckFailed("p-rank formula " + std::to_string(*formula) + " differs from elimination " + std::to_string(*brute));
  Output o;
  const std::uint64_t value = formula ? *formula : *brute;
  o.doc = {{"q", f.q}, {"graph", to_string(kind)}, {"method", to_string(method)}, {"p_rank", value}};
  o.text = "rank_" + std::to_string(f.p) + " L = " + std::to_string(value) + "\n";
  return o;
}

Output cmd_trees(const RunConfig& cfg) {
  const Method method = parse_method(cfg.method);
  const GraphKind kind = parse_graph_kind(cfg.graph);
  const Field f = resolve_field(cfg, false);
  check_kind(f, kind);
  const mpz_class count = spanning_trees(f.q);
  if (method != Method::Formula) {
    guard_snf(cfg, f.q);
    CriticalGroupOptions opts;
    opts.method = Method::Snf;
    opts.jobs = cfg.jobs;
    const auto res = critical_group(f.p, f.n, kind, opts);
    if (group_order(res.group) != count) throw CheckFailed("critical group order differs from the spanning tree count");
  }
  Output o;
  o.doc = {{"q", f.q}, {"graph", to_string(kind)}, {"spanning_trees", count.get_str()}};
  o.text = count.get_str() + "\n";
  return o;
}

Output cmd_blocks(const RunConfig& cfg) {
  const Method method = parse_method(cfg.method);
  const Field f = resolve_field(cfg, true);
  const CarryContext ctx(f.p, f.n / 2);
  std::optional<FieldTable> F;
  std::optional<GaloisRing> ring;
  if (method != Method::Formula) {
    F = build_field(f.p, f.n);
    ring = build_ring(*F, cfg.precision.value_or(2 * ctx.t() + 2));
  }
  const auto reps = ctx.class_reps();
  json blocks = json::array();
  std::ostringstream t;
  Output o;
  for (const auto& rep : reps) {
    BlockReport b;
    if (method == Method::Snf) {
      b = block_divisors_local(ctx, rep.rep, *ring);
    } else {
      b = block_divisors_formula(ctx, rep.rep, ring ? &*ring : nullptr);
      if (method == Method::Both) {
        const BlockReport local = block_divisors_local(ctx, rep.rep, *ring);
        if (local.exponents != b.exponents && o.ok) {
          o.ok = false;
          o.failure = "block " + std::to_string(rep.rep) + ": formula and local exponents differ";
        }
      }
    }
    blocks.push_back(block_json(b));
    t << "i=" << b.rep << " list1";
    for (auto x : b.list1) t << " " << x;
    t << " list2";
    for (auto x : b.list2) t << " " << x;
    t << " -> " << (b.chosen == 1 ? "list1" : "list2") << " [" << to_string(b.method) << "] exponents";
    for (auto x : b.exponents) t << " " << x;
    t << (b.tie ? " (tie)" : "") << "\n";
  }
  const M0Report m0 = ring ? m0_divisors_local(*ring) : m0_divisors(ctx);
  if (ring && (m0.exponents != m0_divisors(ctx).exponents || m0.free_rank != 1) && o.ok) {
    o.ok = false;
    o.failure = "M_0 block divisors differ from (0, 0, t, t) with free rank 1";
  }
  o.doc = {{"q", f.q}, {"method", to_string(method)}, {"blocks", blocks},
           {"m0", {{"free_rank", m0.free_rank}, {"exponents", m0.exponents}}}};
  t << "M_0: free rank " << m0.free_rank << ", exponents";
  for (auto x : m0.exponents) t << " " << x;
  t << "\n";
  o.text = t.str();
  return o;
}

Output from_report(const Report& r) {
  Output o;
  o.doc = report_json(r);
  o.text = report_text(r);
  o.ok = r.passed();
  if (const Check* c = r.first_failure()) o.failure = r.suite + ": " + c->name + (c->detail.empty() ? "" : " (" + c->detail + ")");
  return o;
}

Output cmd_verify(const RunConfig& cfg) {
  const Field f = resolve_field(cfg, true);
  const std::uint32_t t = f.n / 2;
  const CarryContext ctx(f.p, t);
  const std::string& s = cfg.suite;
  static const std::vector<std::string> suites = {"carries", "stickelberger", "action", "blocks", "berndt", "canon", "m0"};
  if (std::find(suites.begin(), suites.end(), s) == suites.end())
    throw std::invalid_argument("unknown suite '" + s + "'");
  if (s == "carries") return from_report(verify_carries(ctx));
  const bool needs_p2 = s == "berndt" || s == "canon";
  if (needs_p2 && t != 1) throw std::invalid_argument("suite '" + s + "' needs q = p^2");
  const FieldTable F = build_field(f.p, f.n);
  const GaloisRing ring = build_ring(F, cfg.precision.value_or(2 * t + 2));
  if (s == "stickelberger") return from_report(verify_stickelberger(ctx, ring, f.q <= 121, cfg.jobs));
  if (s == "action") return from_report(verify_action_formula(ring, cfg.jobs));
  if (s == "berndt") return from_report(verify_berndt(ctx, ring, cfg.jobs));
  if (s == "canon") return from_report(verify_canonical_forms(ctx, ring, cfg.jobs));
  if (s == "m0") return from_report(verify_m0(ctx, ring));
  // blocks: displayed matrices plus local divisors against the carry formula.
  Report rep = verify_block_displays(ring, cfg.jobs);
  std::vector<std::string> bad;
  for (const auto& c : ctx.class_reps()) {
    const auto local = block_divisors_local(ctx, c.rep, ring);
    const auto formula = block_divisors_formula(ctx, c.rep, &ring);
    if (local.exponents != formula.exponents) bad.push_back(std::to_string(c.rep));
  }
  rep.add("block exponents by elimination equal the carry-count choice", bad.empty(),
          bad.empty() ? std::to_string(ctx.class_reps().size()) + " classes" : "classes " + [&] {
            std::string x;
            for (auto& b : bad) x += (x.empty() ? "" : ",") + b;
            return x;
          }());
  return from_report(rep);
}

std::vector<Triple> parse_samples(const std::string& text) {
  if (text.empty()) return default_grid();
  std::vector<Triple> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) {
    Triple tr;
    char c1 = 0, c2 = 0;
    std::istringstream in(item);
    if (!(in >> tr.a >> c1 >> tr.b >> c2 >> tr.c) || c1 != ',' || c2 != ',')
      throw std::invalid_argument("samples must look like 'a,b,c;a,b,c', got '" + item + "'");
    out.push_back(tr);
  }
  return out;
}

Output cmd_compare(const RunConfig& cfg) {
  if (!cfg.p) throw std::invalid_argument("compare needs --p");
  const std::uint32_t p = *cfg.p;
  if (!is_prime(p) || p % 4 != 3) throw std::invalid_argument("compare needs a prime p == 3 (mod 4)");
  if (static_cast<std::uint64_t>(p) * p > kSnfLimit && !cfg.force)
    throw std::invalid_argument("q = p^2 exceeds " + std::to_string(kSnfLimit) + " (pass --force to override)");
  return from_report(compare_suite(p, parse_samples(cfg.samples), cfg.jobs));
}

IntMatrix build_export_matrix(const RunConfig& cfg, const FieldTable& F, GraphKind kind) {
  const IntMatrix adj = adjacency(F, kind);
  if (cfg.matrix == "adjacency") return adj;
  if (cfg.matrix == "laplacian") return laplacian(adj);
  const std::string prefix = "generalized:";
  if (cfg.matrix.rfind(prefix, 0) == 0) {
    const auto triples = parse_samples(cfg.matrix.substr(prefix.size()));
    if (triples.size() != 1) throw std::invalid_argument("generalized needs exactly one a,b,c triple");
    return generalized(adj, triples[0].a, triples[0].b, triples[0].c);
  }
  throw std::invalid_argument("unknown matrix '" + cfg.matrix + "'");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Critical groups, Smith groups and Jacobi sum checks for Peisert and Paley graphs"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_field = [&](CLI::App* sub) {
    sub->add_option("--q", cfg.q, "field size q");
    sub->add_option("--p", cfg.p, "characteristic p");
    sub->add_option("--t", cfg.t, "q = p^(2t)");
  };
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--out", cfg.out_path, "write the result to this file");
    sub->add_option("--jobs", cfg.jobs, "worker threads (0 = all cores)");
  };

  auto* field = app.add_subcommand("field", "field tables and connection sets");
  add_field(field);
  field->add_option("--n", cfg.n, "extension degree");
  add_common(field);

  std::vector<std::pair<std::string, CLI::App*>> subs;
  for (auto [name, help] : {std::pair{"critgroup", "critical group of the Laplacian"},
                            std::pair{"smithgroup", "Smith group of the adjacency matrix"},
                            std::pair{"prank", "p-rank of the Laplacian"},
                            std::pair{"trees", "number of spanning trees"}}) {
    auto* sub = app.add_subcommand(name, help);
    add_field(sub);
    add_common(sub);
    sub->add_option("--graph", cfg.graph, "peisert or paley")->check(CLI::IsMember({"peisert", "paley"}));
    sub->add_option("--method", cfg.method, "formula, snf or both")->check(CLI::IsMember({"formula", "snf", "both"}));
    sub->add_flag("--force", cfg.force, "allow brute force beyond q = 400");
    subs.push_back({name, sub});
  }
  subs[0].second->add_option("--precision", cfg.precision, "ring precision for tie fallbacks");
  subs[0].second->add_flag("--omit-blocks", cfg.omit_blocks, "leave the per-block reports out of the JSON");

  auto* blocks = app.add_subcommand("blocks", "per-class exponents on M_i");
  add_field(blocks);
  add_common(blocks);
  blocks->add_option("--method", cfg.method, "formula, snf (ring elimination) or both")
      ->check(CLI::IsMember({"formula", "snf", "both"}));
  blocks->add_option("--precision", cfg.precision, "ring precision");

  auto* verify = app.add_subcommand("verify", "run a property suite");
  add_field(verify);
  add_common(verify);
  verify->add_option("--suite", cfg.suite, "carries, stickelberger, action, blocks, berndt, canon or m0")->required();
  verify->add_option("--precision", cfg.precision, "ring precision");

  auto* compare = app.add_subcommand("compare", "Paley versus Peisert on q = p^2");
  compare->add_option("--p", cfg.p, "prime p == 3 (mod 4)")->required();
  add_common(compare);
  compare->add_option("--samples", cfg.samples, "a,b,c;a,b,c triples (default grid a in 1..3, b, c in -2..2)");
  compare->add_flag("--force", cfg.force, "allow q = p^2 beyond 400");

  auto* exp = app.add_subcommand("export", "write a matrix in Matrix Market format");
  add_field(exp);
  exp->add_option("--graph", cfg.graph, "peisert or paley")->check(CLI::IsMember({"peisert", "paley"}));
  exp->add_option("--matrix", cfg.matrix, "adjacency, laplacian or generalized:a,b,c");
  std::string mm_format = "matrixmarket";
  exp->add_option("--format", mm_format, "matrixmarket")->check(CLI::IsMember({"matrixmarket"}));
  exp->add_option("--out", cfg.out_path, "output file");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInvalid;
  }

  try {
    std::ofstream file;
    std::ostream* sink = &out;
    auto open_sink = [&] {
      if (cfg.out_path.empty()) return;
      file.open(cfg.out_path);
      if (!file) throw std::invalid_argument("cannot open " + cfg.out_path);
      sink = &file;
    };

    if (exp->parsed()) {
      const GraphKind kind = parse_graph_kind(cfg.graph);
      const Field f = resolve_field(cfg, false);
      check_kind(f, kind);
      const FieldTable F = build_field(f.p, f.n);
      const IntMatrix m = build_export_matrix(cfg, F, kind);
      std::ostringstream body;
      write_matrix_market(body, m);
      // The banner has to stay on the first line.
      const std::string text = body.str();
      const auto nl = text.find('\n');
      open_sink();
      *sink << text.substr(0, nl + 1) << "% " << to_string(kind) << " graph on GF(" << f.q
            << "), row i is the field element with encoding i-1\n"
            << text.substr(nl + 1);
      return kOk;
    }

    Output o;
    if (field->parsed()) o = cmd_field(cfg);
    else if (subs[0].second->parsed()) o = cmd_critgroup(cfg);
    else if (subs[1].second->parsed()) o = cmd_smithgroup(cfg);
    else if (subs[2].second->parsed()) o = cmd_prank(cfg);
    else if (subs[3].second->parsed()) o = cmd_trees(cfg);
    else if (blocks->parsed()) o = cmd_blocks(cfg);
    else if (verify->parsed()) o = cmd_verify(cfg);
    else if (compare->parsed()) o = cmd_compare(cfg);

    open_sink();
    if (cfg.format == "json") *sink << o.doc.dump(2) << "\n";
    else *sink << o.text;
    if (!o.ok) {
      err << "verification failed: " << o.failure << "\n";
      return kFailed;
    }
    return kOk;
  } catch (const std::invalid_argument& e) {
    err << "invalid parameters: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::exception& e) {
    err << "verification failed: " << e.what() << "\n";
    return kFailed;
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace peisert::cli

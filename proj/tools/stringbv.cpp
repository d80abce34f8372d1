// Command-line front end: dlcop, delta, verify, iso, hochschild, transport.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "stringbv/hochschild.hpp"
#include "stringbv/iso_search.hpp"
#include "stringbv/loop_model.hpp"
#include "stringbv/string_bv.hpp"

using namespace sbv;
using json = nlohmann::ordered_json;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct Input {
  std::string preset;
  std::string file;
  int prime = -1;
  std::string format = "md";
};

struct Loaded {
  std::string label;
  LoopModel model;
};

Loaded load(const Input& in) {
  if (in.preset.empty() == in.file.empty()) throw Error("give exactly one of --preset or --file");
  std::optional<uint32_t> p;
  if (in.prime >= 0) p = static_cast<uint32_t>(in.prime);
  if (!in.preset.empty()) return {in.preset, LoopModel(preset(in.preset, p))};
  std::ifstream f(in.file);
  if (!f) throw Error("cannot open " + in.file);
  std::stringstream ss;
  ss << f.rdbuf();
  Presentation pres = parse_presentation(ss.str());
  if (p) pres.prime = *p;
  return {in.file, LoopModel(pres)};
}

std::string field_name(uint32_t p) { return p == 0 ? "Q" : "F_" + std::to_string(p); }

std::vector<Monomial> exterior_monomials(const LoopModel& model) {
  std::vector<Monomial> out;
  for (uint64_t mask = 0; mask <= model.full_mask(); ++mask) {
    Monomial m;
    m.ext = mask;
    out.push_back(m);
  }
  std::sort(out.begin(), out.end(), MonomialLess{});
  return out;
}

Element unit_element(const AlgebraSpec& spec, const Monomial& m) { return Element(m, spec.scalar(1)); }

int run_dlcop(const Input& in) {
  auto [label, model] = load(in);
  BVContext ctx(model);
  const auto& loop = ctx.loop();
  auto monos = exterior_monomials(model);
  json rows = json::array();
  for (const auto& a : monos)
    for (const auto& b : monos) {
      Element v = ctx.dlcop(unit_element(loop, a), unit_element(loop, b));
      rows.push_back({{"a", loop.format(a)}, {"b", loop.format(b)}, {"value", loop.format(v)}});
    }
  if (in.format == "json") {
    json doc{{"input", label}, {"field", field_name(ctx.prime())}, {"d", ctx.d()},
             {"unit", loop.format(ctx.unit())}, {"dlcop", rows}};
    std::cout << doc.dump(2) << "\n";
    return kOk;
  }
  std::cout << "# Dlcop on exterior monomials: " << label << " over " << field_name(ctx.prime())
            << ", d = " << ctx.d() << "\n\n";
  std::cout << "unit: " << loop.format(ctx.unit()) << "\n\n";
  std::cout << "| a | b | Dlcop(a, b) |\n|---|---|---|\n";
  for (const auto& r : rows)
    std::cout << "| " << r["a"].get<std::string>() << " | " << r["b"].get<std::string>() << " | "
              << r["value"].get<std::string>() << " |\n";
  return kOk;
}

int run_delta(const Input& in, int min_degree, int max_degree) {
  auto [label, model] = load(in);
  const auto& loop = model.loop();
  if (max_degree < 0) max_degree = model.d();
  json rows = json::array();
  for (int n = std::max(0, min_degree); n <= max_degree; ++n)
    for (const auto& m : basis_of_degree(loop, n))
      rows.push_back({{"degree", n}, {"a", loop.format(m)},
                      {"delta", loop.format(model.delta(unit_element(loop, m)))}});
  if (in.format == "json") {
    std::cout << json{{"input", label}, {"field", field_name(model.prime())}, {"delta", rows}}.dump(2)
              << "\n";
    return kOk;
  }
  std::cout << "# BV operator on H*(LX): " << label << " over " << field_name(model.prime()) << "\n\n";
  std::cout << "| degree | a | Delta(a) |\n|---|---|---|\n";
  for (const auto& r : rows)
    std::cout << "| " << r["degree"].get<int>() << " | " << r["a"].get<std::string>() << " | "
              << r["delta"].get<std::string>() << " |\n";
  return kOk;
}

std::set<std::string> split_checks(const std::string& s) {
  std::set<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.insert(item);
  return out;
}

int run_verify(const Input& in, const VerifyOptions& opts) {
  auto [label, model] = load(in);
  BVContext ctx(model);
  VerifyReport rep = verify(ctx, opts);
  if (in.format == "json") {
    json checks = json::array();
    for (const auto& c : rep.checks)
      checks.push_back({{"check", c.name}, {"samples", c.samples}, {"failures", c.failures},
                        {"counterexample", c.counterexample}});
    std::cout << json{{"input", label}, {"field", field_name(ctx.prime())}, {"seed", opts.seed},
                      {"passed", rep.passed()}, {"checks", checks}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << "# Verification: " << label << " over " << field_name(ctx.prime())
              << ", seed " << opts.seed << "\n\n";
    std::cout << "| check | samples | failures | counterexample |\n|---|---|---|---|\n";
    for (const auto& c : rep.checks)
      std::cout << "| " << c.name << " | " << c.samples << " | " << c.failures << " | "
                << (c.counterexample.empty() ? "-" : c.counterexample) << " |\n";
    std::cout << "\n" << (rep.passed() ? "all checks passed" : "FAILED") << "\n";
  }
  return rep.passed() ? kOk : kFailed;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string found_line(const IsoReport& r) {
  std::size_t n = r.found();
  if (n == 0) {
    std::string s = "0 found";
    if (!r.dimension_mismatch.empty()) s += "; obstruction: dimensions differ (" + r.dimension_mismatch + ")";
    else if (r.obstruction()) s += "; obstruction: unit ∈ Im Δ differs";
    return s;
  }
  return std::to_string(n) + (n == 1 ? " isomorphism found" : " isomorphisms found");
}

// Twice the top degree of a square relation x_i^2 in the loop algebra.
int default_iso_degree(const LoopModel& model) {
  int top = 0;
  for (const auto& g : model.loop().ext_gens()) top = std::max(top, 2 * g.degree);
  return std::max(2, 2 * top);
}

int run_iso(const Input& in, IsoOptions opts) {
  auto [label, model] = load(in);
  if (opts.max_degree < 0) opts.max_degree = default_iso_degree(model);
  BVContext ctx(model);
  LoopBV target(ctx, "H*(LX)");
  HochschildBV source(hochschild_of_homology(model), "HH*(H_*(G))");
  IsoReport r = find_isomorphisms(source, target, opts);
  auto names = source.generator_names();
  auto gens = source.generators();
  auto count = [](const std::optional<std::size_t>& c) -> json {
    return c ? json(*c) : json(nullptr);
  };
  if (in.format == "json") {
    json survivors = json::array();
    for (const auto& s : r.survivors) {
      json row = json::object();
      for (std::size_t g = 0; g < names.size(); ++g) row[names[g]] = target.format(s.images[g]);
      survivors.push_back(row);
    }
    json doc{{"input", label},
             {"field", field_name(ctx.prime())},
             {"level", level_name(r.level)},
             {"max_degree", r.max_degree},
             {"exhaustive", r.exhaustive_enumeration},
             {"scanned", count(r.scanned)},
             {"algebra", count(r.algebra)},
             {"surjective", count(r.surjective)},
             {"gerstenhaber", count(r.gerstenhaber)},
             {"delta_commuting", count(r.delta_commuting)},
             {"bv", count(r.bv)},
             {"dimension_mismatch", r.dimension_mismatch},
             {"source_unit_in_image_delta", r.source_unit_in_image ? json(*r.source_unit_in_image) : json(nullptr)},
             {"target_unit_in_image_delta", r.target_unit_in_image ? json(*r.target_unit_in_image) : json(nullptr)},
             {"found", r.found()},
             {"survivors", survivors},
             {"summary", found_line(r)}};
    std::cout << doc.dump(2) << "\n";
    return kOk;
  }
  std::cout << "# Isomorphism search: " << source.name() << " -> " << target.name() << " for " << label
            << " over " << field_name(ctx.prime()) << "\n\n";
  std::cout << "- level: " << level_name(r.level) << "\n";
  std::cout << "- degrees checked: up to " << r.max_degree << "\n";
  std::cout << "- method: " << (r.exhaustive_enumeration ? "exhaustive enumeration" : "pruned search") << "\n";
  if (r.scanned) std::cout << "- candidates scanned: " << *r.scanned << "\n";
  if (r.algebra) std::cout << "- algebra morphisms: " << *r.algebra << "\n";
  if (r.surjective) std::cout << "- surjective: " << *r.surjective << "\n";
  if (r.gerstenhaber) std::cout << "- Gerstenhaber: " << *r.gerstenhaber << "\n";
  if (r.delta_commuting)
    std::cout << "- commuting with Δ up to degree " << r.max_degree << ": " << *r.delta_commuting << "\n";
  if (r.bv) std::cout << "- BV: " << *r.bv << "\n";
  if (r.source_unit_in_image)
    std::cout << "- unit ∈ Im Δ: source " << yes_no(*r.source_unit_in_image) << ", target "
              << yes_no(*r.target_unit_in_image) << "\n";
  std::size_t k = 0;
  for (const auto& s : r.survivors) {
    std::cout << "\n## isomorphism " << ++k << "\n\n| generator | degree | image |\n|---|---|---|\n";
    for (std::size_t g = 0; g < names.size(); ++g)
      std::cout << "| " << names[g] << " | " << source.degree(gens[g]) << " | "
                << target.format(s.images[g]) << " |\n";
  }
  if (r.survivors.size() < r.found())
    std::cout << "\n(" << r.found() - r.survivors.size() << " further survivors not listed)\n";
  std::cout << "\n" << found_line(r) << "\n";
  return kOk;
}

// Checks on the Hochschild model up to a degree bound.
struct HHChecks {
  std::size_t monomials = 0, delta_square = 0, peel = 0;
  bool unit_in_image = false;
};

HHChecks hh_checks(const HochschildBV& hb, int max_degree) {
  HHChecks out;
  const auto& hh = hb.hh();
  for (int n = hb.min_degree(); n <= max_degree; ++n)
    for (const auto& m : hb.basis(n)) {
      ++out.monomials;
      Element a = unit_element(hb.carrier(), m);
      Element front = hh.delta(a, PeelOrder::Front);
      if (!hh.delta(front).is_zero()) ++out.delta_square;
      if (front != hh.delta(a, PeelOrder::Back)) ++out.peel;
    }
  out.unit_in_image = unit_in_image_delta(hb);
  return out;
}

std::string scalar_vector(const FiniteAlgebra& a, const std::vector<Scalar>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_zero()) continue;
    if (!s.empty()) s += " + ";
    s += (v[i].is_one() ? "" : v[i].to_string() + "*") + a.name(i);
  }
  return s.empty() ? "0" : s;
}

int run_hochschild(const Input& in, int truncated, int max_degree) {
  if (truncated >= 0) {
    if (!in.preset.empty() || !in.file.empty()) throw Error("--truncated replaces --preset/--file");
    uint32_t p = in.prime < 0 ? 2 : static_cast<uint32_t>(in.prime);
    FiniteAlgebra a = FiniteAlgebra::truncated_polynomial(2, static_cast<unsigned>(truncated), p);
    auto w = unit_in_image_delta_via_derivation(a, standard_trace(a));
    std::string witness = w ? scalar_vector(a, w->images[a.generators()[0]]) : "";
    if (in.format == "json") {
      std::cout << json{{"algebra", "K[x]/x^" + std::to_string(truncated + 1)},
                        {"field", field_name(p)},
                        {"unit_in_image_delta", w.has_value()},
                        {"witness_d_x", w ? json(witness) : json(nullptr)}}
                       .dump(2)
                << "\n";
    } else {
      std::cout << "# Hochschild criterion: K[x]/x^" << truncated + 1 << " over " << field_name(p)
                << "\n\n";
      std::cout << "- derivation d with tr∘d = tr: " << (w ? "d(x) = " + witness : "none") << "\n";
      std::cout << "- unit ∈ Im Δ: " << yes_no(w.has_value()) << "\n";
    }
    return kOk;
  }
  auto [label, model] = load(in);
  HochschildBV hb(hochschild_of_homology(model), "HH*(H_*(G))");
  const auto& hh = hb.hh();
  if (max_degree < 0) max_degree = model.d();
  std::vector<int> hom_degrees;
  for (const auto& g : model.loop().ext_gens()) hom_degrees.push_back(g.degree);
  std::optional<Derivation> w;
  bool exterior_homology = model.hypothesis_h() || model.prime() == 2;
  if (exterior_homology) {
    FiniteAlgebra a = FiniteAlgebra::exterior(hom_degrees, model.prime());
    w = unit_in_image_delta_via_derivation(a, standard_trace(a));
  }
  std::optional<HHChecks> checks;
  if (hh.has_delta()) checks = hh_checks(hb, max_degree);
  if (in.format == "json") {
    json gens = json::array();
    for (const auto& g : hh.generators())
      gens.push_back({{"name", g.name}, {"degree", g.degree}, {"exterior", g.exterior},
                      {"dual", g.dual_name}, {"dual_degree", 1 - g.degree}});
    json doc{{"input", label}, {"field", field_name(model.prime())}, {"generators", gens},
             {"has_delta", hh.has_delta()}};
    if (checks)
      doc["checks"] = {{"max_degree", max_degree},
                       {"monomials", checks->monomials},
                       {"delta_square_failures", checks->delta_square},
                       {"peel_order_failures", checks->peel},
                       {"unit_in_image_delta", checks->unit_in_image}};
    if (exterior_homology) doc["trace_derivation_exists"] = w.has_value();
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << "# Hochschild model of H_*(G): " << label << " over " << field_name(model.prime())
              << "\n\n| generator | degree | dual | dual degree |\n|---|---|---|---|\n";
    for (const auto& g : hh.generators())
      std::cout << "| " << g.name << " | " << g.degree << " | " << g.dual_name << " | " << 1 - g.degree
                << " |\n";
    std::cout << "\n- BV operator: " << (hh.has_delta() ? "defined" : "not defined") << "\n";
    if (checks) {
      std::cout << "- monomials checked (degree <= " << max_degree << "): " << checks->monomials << "\n";
      std::cout << "- Δ∘Δ = 0 failures: " << checks->delta_square << "\n";
      std::cout << "- peel-order failures: " << checks->peel << "\n";
      std::cout << "- unit ∈ Im Δ: " << yes_no(checks->unit_in_image) << "\n";
    }
    if (exterior_homology)
      std::cout << "- derivation d with tr∘d = tr on H_*(G): " << (w ? "exists" : "none") << "\n";
  }
  bool ok = !checks || (checks->delta_square == 0 && checks->peel == 0);
  return ok ? kOk : kFailed;
}

int run_transport(const Input& in, int max_degree) {
  if (in.preset.empty()) throw Error("transport needs --preset so3 or --preset g2");
  auto [label, model] = load(in);
  BVContext ctx(model);
  LoopBV target(ctx, "H*(LX)");
  SplittingData sp = preset_splitting(in.preset, ctx);
  TransportedBV tr(sp.spec, target, sp.images, "free side");
  if (max_degree == std::numeric_limits<int>::min()) max_degree = 1;
  auto gens = tr.generators();
  auto names = tr.generator_names();
  json images = json::array();
  for (std::size_t g = 0; g < gens.size(); ++g)
    images.push_back({{"generator", names[g]}, {"degree", tr.degree(gens[g])},
                      {"image", target.format(sp.images.images[g])}});
  json rows = json::array();
  for (const auto& [m, v] : transport_delta(tr, max_degree))
    rows.push_back({{"degree", tr.carrier().degree(m)}, {"a", tr.carrier().format(m)},
                    {"delta", tr.carrier().format(v)}});
  if (in.format == "json") {
    std::cout << json{{"input", label}, {"field", field_name(ctx.prime())}, {"images", images},
                      {"delta", rows}}
                     .dump(2)
              << "\n";
    return kOk;
  }
  std::cout << "# Transported BV operator: " << label << " over " << field_name(ctx.prime())
            << "\n\n| generator | degree | image |\n|---|---|---|\n";
  for (const auto& r : images)
    std::cout << "| " << r["generator"].get<std::string>() << " | " << r["degree"].get<int>() << " | "
              << r["image"].get<std::string>() << " |\n";
  std::cout << "\n| degree | a | Delta(a) |\n|---|---|---|\n";
  for (const auto& r : rows)
    std::cout << "| " << r["degree"].get<int>() << " | " << r["a"].get<std::string>() << " | "
              << r["delta"].get<std::string>() << " |\n";
  return kOk;
}

void add_input(CLI::App* cmd, Input& in) {
  cmd->add_option("--preset", in.preset, "Shipped presentation (so3, g2, t<n>, su<n>)");
  cmd->add_option("--file", in.file, "Presentation JSON file");
  cmd->add_option("--prime", in.prime, "Coefficient field characteristic (0 = Q)");
  cmd->add_option("--format", in.format, "Output format")->check(CLI::IsMember({"md", "json"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact BV algebra computations on free loop space cohomology"};
  app.require_subcommand(1);
  Input in;
  int min_degree = 0, max_degree = -1, truncated = -1;
  int transport_max = std::numeric_limits<int>::min();
  VerifyOptions vopts;
  std::string checks, level = "bv";
  IsoOptions iopts;

  auto* dlcop = app.add_subcommand("dlcop", "Dlcop table on exterior monomials");
  add_input(dlcop, in);
  auto* delta = app.add_subcommand("delta", "BV operator on a degree range");
  add_input(delta, in);
  delta->add_option("--min-degree", min_degree);
  delta->add_option("--max-degree", max_degree, "Default: d");
  auto* ver = app.add_subcommand("verify", "Seeded BV identity suites");
  add_input(ver, in);
  ver->add_option("--samples", vopts.samples);
  ver->add_option("--seed", vopts.seed);
  ver->add_option("--max-degree", vopts.max_degree, "Default: 3d");
  ver->add_option("--checks", checks, "Comma-separated subset of checks");
  auto* iso = app.add_subcommand("iso", "Isomorphism search against the Hochschild model");
  add_input(iso, in);
  iso->add_option("--level", level)->check(CLI::IsMember({"algebra", "surjective", "gerstenhaber", "bv"}));
  iopts.max_degree = -1;
  iso->add_option("--max-degree", iopts.max_degree, "Default: twice the top square-relation degree");
  iso->add_flag("--first", iopts.first_only, "Stop at the first survivor");
  auto* hoch = app.add_subcommand("hochschild", "Hochschild model and unit criteria");
  add_input(hoch, in);
  hoch->add_option("--max-degree", max_degree, "Default: d");
  hoch->add_option("--truncated", truncated, "Criterion for K[x]/x^(n+1) instead of a preset");
  auto* trans = app.add_subcommand("transport", "BV operator transported to the free side");
  add_input(trans, in);
  trans->add_option("--max-degree", transport_max, "Default: 1");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (*dlcop) return run_dlcop(in);
    if (*delta) return run_delta(in, min_degree, max_degree);
    if (*ver) {
      vopts.checks = split_checks(checks);
      return run_verify(in, vopts);
    }
    if (*iso) {
      iopts.level = parse_level(level);
      return run_iso(in, iopts);
    }
    if (*hoch) return run_hochschild(in, truncated, max_degree);
    if (*trans) return run_transport(in, transport_max);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

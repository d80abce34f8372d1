#include "stringbv/loop_model.hpp"

#include <cctype>
#include <set>

#include <json.hpp>

#include "stringbv/parse.hpp"

namespace sbv {

namespace {

bool all_digits(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(),
                                   [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

// Names for x_i = D(y_i). When every generator is called y<degree> the
// exterior classes are called x<degree-1>, otherwise the y prefix is swapped.
std::vector<std::string> exterior_names(const std::vector<Generator>& gens) {
  std::set<int> degrees;
  bool degree_named = true;
  for (const auto& g : gens) {
    degrees.insert(g.degree);
    if (g.name.size() < 2 || g.name[0] != 'y' || !all_digits(g.name.substr(1)) ||
        std::stoi(g.name.substr(1)) != g.degree)
      degree_named = false;
  }
  if (degrees.size() != gens.size()) degree_named = false;
  std::vector<std::string> out;
  for (const auto& g : gens) {
    if (degree_named)
      out.push_back("x" + std::to_string(g.degree - 1));
    else if (g.name[0] == 'y')
      out.push_back("x" + g.name.substr(1));
    else
      out.push_back("d" + g.name);
  }
  return out;
}

}  // namespace

LoopModel::LoopModel(Presentation pres) : pres_(std::move(pres)) {
  const uint32_t p = pres_.prime;
  if (p != 0 && !is_prime(p))
    throw Error("prime: " + std::to_string(p) + " is not 0 or a prime");
  std::set<std::string> names;
  for (const auto& g : pres_.generators) {
    if (g.name.empty()) throw Error("generators: empty generator name");
    if (!names.insert(g.name).second) throw Error("generators: duplicate name " + g.name);
    if (g.degree < 2)
      throw Error("generators: " + g.name + " has degree " + std::to_string(g.degree) +
                  " (must be at least 2)");
    if (p != 2 && g.degree % 2 != 0)
      throw Error("generators: " + g.name + " has odd degree in characteristic " +
                  std::to_string(p));
  }
  if (p != 2 && !pres_.sq_top.empty())
    throw Error("sq_top: Steenrod data is only accepted for prime 2");
  for (const auto& [name, lit] : pres_.sq_top)
    if (!names.count(name)) throw Error("sq_top: unknown generator " + name);

  base_ = AlgebraSpec(p, pres_.generators, {});
  sq_.assign(rank(), Element{});
  for (std::size_t i = 0; i < rank(); ++i) {
    const auto& g = pres_.generators[i];
    auto it = pres_.sq_top.find(g.name);
    if (it == pres_.sq_top.end()) continue;
    Element e;
    try {
      e = parse_element(base_, it->second);
    } catch (const Error& err) {
      throw Error("sq_top." + g.name + ": " + err.what());
    }
    if (!e.is_zero()) {
      if (!base_.is_homogeneous(e) || *base_.degree(e) != 2 * g.degree - 1)
        throw Error("sq_top." + g.name + ": expected a homogeneous class of degree " +
                    std::to_string(2 * g.degree - 1));
    }
    sq_[i] = e;
  }

  std::vector<Generator> ext, fib;
  auto xnames = exterior_names(pres_.generators);
  d_ = 0;
  for (std::size_t i = 0; i < rank(); ++i) {
    const auto& g = pres_.generators[i];
    ext.push_back({xnames[i], g.degree - 1});
    fib.push_back({"s" + g.name, g.degree - 1});
    d_ += g.degree - 1;
  }
  loop_ = AlgebraSpec(p, pres_.generators, ext, {});
  std::vector<Element> rules;
  for (std::size_t i = 0; i < rank(); ++i) rules.push_back(derivation_D(sq_[i]));
  std::vector<Element> fiber_rules;
  for (const auto& r : rules) {
    Element t;
    for (const auto& [m, c] : r.terms())
      if (!m.has_poly()) t.add_term(m, c);
    fiber_rules.push_back(t);
  }
  loop_ = AlgebraSpec(p, pres_.generators, ext, rules);
  fiber_ = AlgebraSpec(p, {}, fib, fiber_rules);
}

uint64_t LoopModel::full_mask() const {
  return rank() >= 64 ? ~uint64_t{0} : (uint64_t{1} << rank()) - 1;
}

Element LoopModel::poly_part(const Monomial& m, const Scalar& c) const {
  Monomial r = m;
  r.ext = 0;
  return Element(r, c);
}

Element LoopModel::derivation_D(const Element& p) const {
  Element out;
  for (const auto& [m, c] : p.terms())
    if (m.ext != 0) throw Error("D is only defined on polynomial classes");
  for (std::size_t j = 0; j < rank(); ++j) {
    Element dp = partial_derivative(base_, p, j);
    if (!dp.is_zero()) out += multiply(loop_, loop_.ext_gen(j), dp);
  }
  return out;
}

Element LoopModel::delta(const Element& a) const {
  loop_.degree(a);
  Element out;
  for (const auto& [m, c] : a.terms()) {
    Element dp = derivation_D(poly_part(m, c));
    if (dp.is_zero()) continue;
    Element xi = loop_.ext_monomial(m.ext);
    Element t = multiply(loop_, xi, dp);
    out += (loop_.ext_degree(m.ext) % 2 != 0) ? -t : t;
  }
  return out;
}

Element LoopModel::restrict_i(const Element& a) const {
  Element out;
  for (const auto& [m, c] : a.terms()) {
    if (m.has_poly()) continue;
    Monomial r;
    r.ext = m.ext;
    out.add_term(r, c);
  }
  return out;
}

Element LoopModel::antipode(const Element& u) const {
  Element out;
  for (const auto& [m, c] : u.terms()) out.add_term(m, m.ext_count() % 2 ? -c : c);
  return out;
}

Scalar LoopModel::tau(const Element& u) const {
  auto deg = fiber_.degree(u);
  if (deg && *deg != d_)
    throw Error("tau expects degree " + std::to_string(d_) + ", got " + std::to_string(*deg));
  Monomial top;
  top.ext = full_mask();
  auto c = u.coefficient(top);
  return c ? *c : Scalar::zero(prime());
}

// ----------------------------------------------------------------- presets

Presentation preset(const std::string& name, std::optional<uint32_t> prime) {
  auto family_rank = [&](std::size_t prefix) -> int {
    std::string rest = name.substr(prefix);
    if (!all_digits(rest)) throw Error("unknown preset '" + name + "'");
    int n = std::stoi(rest);
    if (n < 1 || n > 16) throw Error("preset rank out of range: " + name);
    return n;
  };
  Presentation p;
  if (name == "so3") {
    if (prime && *prime != 2) throw Error("preset so3 is defined over F_2 only");
    p.prime = 2;
    p.generators = {{"y2", 2}, {"y3", 3}};
    p.sq_top = {{"y2", "y3"}, {"y3", "y2*y3"}};
  } else if (name == "g2") {
    if (prime && *prime != 2) throw Error("preset g2 is defined over F_2 only");
    p.prime = 2;
    p.generators = {{"y4", 4}, {"y6", 6}, {"y7", 7}};
    p.sq_top = {{"y4", "y7"}, {"y6", "y4*y7"}, {"y7", "y6*y7"}};
  } else if (name.rfind("su", 0) == 0) {
    int n = family_rank(2);
    if (n < 2) throw Error("preset su<n> needs n >= 2");
    p.prime = prime.value_or(5);
    for (int k = 2; k <= n; ++k) p.generators.push_back({"y" + std::to_string(2 * k), 2 * k});
  } else if (name.rfind("t", 0) == 0) {
    int n = family_rank(1);
    p.prime = prime.value_or(3);
    for (int k = 1; k <= n; ++k) p.generators.push_back({"y" + std::to_string(k), 2});
  } else {
    throw Error("unknown preset '" + name + "'");
  }
  return p;
}

std::vector<std::string> preset_names() { return {"so3", "g2", "t<n>", "su<n>"}; }

// --------------------------------------------------------------------- json

Presentation parse_presentation(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw Error("presentation must be a JSON object");
  for (const auto& [key, value] : doc.items())
    if (key != "prime" && key != "generators" && key != "sq_top")
      throw Error("unknown field '" + key + "'");
  Presentation p;
  if (!doc.contains("prime")) throw Error("missing field 'prime'");
  if (!doc["prime"].is_number_unsigned()) throw Error("field 'prime' must be a nonnegative integer");
  p.prime = doc["prime"].get<uint32_t>();
  if (!doc.contains("generators")) throw Error("missing field 'generators'");
  if (!doc["generators"].is_array()) throw Error("field 'generators' must be an array");
  std::size_t idx = 0;
  for (const auto& g : doc["generators"]) {
    std::string where = "generators[" + std::to_string(idx++) + "]";
    if (!g.is_object() || !g.contains("name") || !g.contains("degree"))
      throw Error(where + ": expected {\"name\":..., \"degree\":...}");
    if (!g["name"].is_string()) throw Error(where + ".name must be a string");
    if (!g["degree"].is_number_integer()) throw Error(where + ".degree must be an integer");
    p.generators.push_back({g["name"].get<std::string>(), g["degree"].get<int>()});
  }
  if (doc.contains("sq_top")) {
    if (!doc["sq_top"].is_object()) throw Error("field 'sq_top' must be an object");
    for (const auto& [key, value] : doc["sq_top"].items()) {
      if (!value.is_string()) throw Error("sq_top." + key + " must be a string");
      p.sq_top[key] = value.get<std::string>();
    }
  }
  LoopModel check(p);
  return p;
}

std::string serialize_presentation(const Presentation& pres) {
  LoopModel model(pres);
  nlohmann::ordered_json doc;
  doc["prime"] = pres.prime;
  doc["generators"] = nlohmann::ordered_json::array();
  for (const auto& g : pres.generators)
    doc["generators"].push_back({{"name", g.name}, {"degree", g.degree}});
  nlohmann::ordered_json sq = nlohmann::ordered_json::object();
  for (std::size_t i = 0; i < model.rank(); ++i)
    if (pres.sq_top.count(pres.generators[i].name))
      sq[pres.generators[i].name] = model.base().format(model.sq_top(i));
  if (!sq.empty()) doc["sq_top"] = sq;
  return doc.dump();
}

}  // namespace sbv

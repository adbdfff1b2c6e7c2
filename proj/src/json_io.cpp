#include "hmf/json_io.hpp"

namespace hmf {

json to_json(const PadicCtx& cx) {
  json mod = json::array();
  for (int i = 0; i <= cx.f; ++i) mod.push_back(cx.modulus[i]);
  return json{{"p", cx.p}, {"f", cx.f}, {"M", cx.M}, {"modulus", mod}};
}

json to_json(const UnramElem& e) {
  json coords = json::array();
  for (int i = 0; i < e.ctx().f; ++i) coords.push_back(u128_to_string(e.coord(i)));
  return json{{"coords", coords}, {"valuation_floor", e.val()}};
}

UnramElem unram_from_json(const PadicCtx& cx, const json& j) {
  std::vector<u128> co;
  for (const auto& s : j.at("coords")) co.push_back(u128_from_string(s.get<std::string>()));
  while ((int)co.size() < cx.f) co.push_back(0);
  return UnramElem::from_coords(cx, co);
}

json to_json(const MonoidIdx& b) { return json::array({b.m, b.n}); }

json to_json(const Weight& w) {
  json u = json::array();
  for (const auto& us : w.u)
    for (int i = 0; i < us.ctx().f; ++i) u.push_back(u128_to_string(us.coord(i)));
  return json{{"u", u}, {"chi", w.chi}, {"n", w.n}};
}

json to_json(const QExp& g) {
  json coeffs = json::array();
  for (const auto& [b, v] : g.coeffs())
    coeffs.push_back(json{{"beta", to_json(b)}, {"value", to_json(v)}});
  return json{{"trace_bound", g.trace_bound()}, {"coeffs", coeffs}};
}

json to_json(const NocForm& h) {
  json terms = json::array();
  for (const auto& [d, q] : h.terms())
    terms.push_back(json{{"deg", json::array({d[0], d[1]})}, {"qexp", to_json(q)}});
  return json{{"weight", to_json(h.weight())},
              {"order_bound", h.order_bound()},
              {"terms", terms}};
}

json to_json(const QLine& g) {
  json coeffs = json::array();
  for (const auto& [m, v] : g.coeffs())
    coeffs.push_back(json{{"m", m}, {"value", to_json(v)}});
  return json{{"bound", g.bound()}, {"coeffs", coeffs}};
}

json to_json(const QNoc& h) {
  json terms = json::array();
  for (const auto& [d, q] : h.terms())
    terms.push_back(json{{"deg", d}, {"qexp", to_json(q)}});
  return json{{"weight", to_json(h.weight())},
              {"order_bound", h.order_bound()},
              {"terms", terms}};
}

json to_json(const EigenData& d) {
  json roots = json::array();
  for (const auto& [a, b] : d.p_roots)
    roots.push_back(json::array({to_json(a), to_json(b)}));
  json seeds = json::object();
  for (const auto& [k, v] : d.seeds)
    seeds[std::to_string(k.first) + ":" + std::to_string(k.second)] = to_json(v);
  return json{{"k", d.k}, {"p_roots", roots}, {"seeds", seeds}};
}

json to_json(const TripleReport& r) {
  json lines = json::array();
  for (const auto& l : r.lines)
    lines.push_back(json{{"name", l.name},
                         {"pass", l.pass},
                         {"residual_valuation", l.residual_val},
                         {"required", l.required}});
  json ratio;
  if (r.interpolation_ratio.u.valid())
    ratio = json{{"value", to_json(r.interpolation_ratio.u)},
                 {"p_denominator_exponent", r.interpolation_ratio.e}};
  return json{{"identities", lines}, {"all_pass", r.all_pass}, {"interpolation_ratio", ratio}};
}

json to_json(const AcceptanceReport& r) {
  json out = json::array();
  for (const auto& c : r.results)
    out.push_back(json{
        {"criterion", c.id}, {"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  return json{{"criteria", out}, {"all_pass", r.all_pass}};
}

}  // namespace hmf

#pragma once

// JSON wire formats: coordinates as decimal strings, indices as [m, n].

#include "hmf/hecke.hpp"
#include "hmf/selftest.hpp"
#include "hmf/triple.hpp"

#include <json.hpp>

namespace hmf {

using json = nlohmann::json;

json to_json(const PadicCtx& cx);
json to_json(const UnramElem& e);
UnramElem unram_from_json(const PadicCtx& cx, const json& j);
json to_json(const MonoidIdx& b);
json to_json(const Weight& w);
json to_json(const QExp& g);
json to_json(const NocForm& h);
json to_json(const QLine& g);
json to_json(const QNoc& h);
json to_json(const EigenData& d);
json to_json(const TripleReport& r);
json to_json(const AcceptanceReport& r);

}  // namespace hmf

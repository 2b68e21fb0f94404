#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "qg/collapse.hpp"
#include "qg/identity.hpp"
#include "qg/kunen.hpp"
#include "qg/search.hpp"

namespace qg::report {

using Json = nlohmann::ordered_json;

enum class Format { Table, Structured };

/// "x=0 y=0 z=1"
std::string format_assignment(const Assignment& a);

Json to_json(const Assignment& a);
Json to_json(const CayleyTable& t);
Json to_json(const HoldsVerdict& v, const Identity& id);
Json to_json(const KunenReport& r);
Json to_json(const CollapseVerdict& v, const BijectionFamily& fam, const Partition& p);
Json to_json(const ModelCount& c, const SearchSpec& spec);

std::string render_holds(const HoldsVerdict& v);
std::string render_kunen(const KunenReport& r);
std::string render_collapse(const CollapseVerdict& v, const BijectionFamily& fam, const Partition& p);

/// Two-space indented JSON with a trailing newline.
std::string dump(const Json& doc);

}  // namespace qg::report

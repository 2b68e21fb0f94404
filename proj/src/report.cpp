#include "qg/report.hpp"

#include <iomanip>
#include <sstream>

namespace qg::report {

namespace {

Json optional_element(const std::optional<Element>& e) { return e ? Json(*e) : Json(nullptr); }

Json optional_assignment(const std::optional<Assignment>& a) { return a ? to_json(*a) : Json(nullptr); }

std::string render_partition(const Partition& p) {
  std::string out;
  for (const auto& block : p.blocks()) {
    out += out.empty() ? "{" : " {";
    for (std::size_t i = 0; i < block.size(); ++i) out += (i ? "," : "") + std::to_string(block[i]);
    out += "}";
  }
  return out;
}

}  // namespace

std::string format_assignment(const Assignment& a) {
  std::string out;
  for (const auto& [name, value] : a) {
    if (!out.empty()) out += ' ';
    out += name + "=" + std::to_string(value);
  }
  return out;
}

Json to_json(const Assignment& a) {
  Json j = Json::object();
  for (const auto& [name, value] : a) j[name] = value;
  return j;
}

Json to_json(const CayleyTable& t) {
  Json rows = Json::array();
  for (Element a = 0; a < t.order(); ++a) rows.push_back(Json(std::vector<Element>(t.row(a).begin(), t.row(a).end())));
  return rows;
}

Json to_json(const HoldsVerdict& v, const Identity& id) {
  Json j;
  j["kind"] = "holds_verdict";
  j["identity"] = to_string(id);
  j["holds"] = v.holds;
  j["witness"] = optional_assignment(v.witness);
  return j;
}

Json to_json(const KunenReport& r) {
  Json j;
  j["kind"] = "kunen_report";
  j["model_order"] = r.model_order;
  j["is_quasigroup"] = r.is_quasigroup;
  if (r.latin_witness) {
    j["latin_witness"] = {{"kind", r.latin_witness->kind == LatinVerdict::Kind::Row ? "row" : "column"},
                          {"index", r.latin_witness->index},
                          {"duplicated_value", r.latin_witness->duplicated_value}};
  } else {
    j["latin_witness"] = nullptr;
  }
  j["n1_evaluated"] = r.n1_evaluated;
  j["n1_holds"] = r.n1_evaluated ? Json(r.n1_holds) : Json(nullptr);
  j["n1_witness"] = optional_assignment(r.n1_witness);
  Json steps = Json::object();
  for (const auto& s : r.steps)
    steps[std::string(step_name(s.step_id))] = {{"passed", s.passed}, {"witness", optional_assignment(s.witness)}};
  j["steps"] = steps;
  j["identity_element"] = optional_element(r.identity_element);
  j["is_loop"] = r.is_loop;
  return j;
}

Json to_json(const CollapseVerdict& v, const BijectionFamily& fam, const Partition& p) {
  Json j;
  j["kind"] = "collapse_verdict";
  j["idempotent_ok"] = v.idempotent_ok;
  j["idempotent_witness"] = v.idempotent_witness ? Json{{"x", *v.idempotent_witness}} : Json(nullptr);
  j["transitivity_ok"] = v.transitivity_ok;
  j["transitivity_witness"] = v.transitivity_witness
                                  ? Json{{"x", v.transitivity_witness->first}, {"y", v.transitivity_witness->second}}
                                  : Json(nullptr);
  j["coequalization_ok"] = v.coequalization_ok;
  j["coequalization_witness"] =
      v.coequalization_witness
          ? Json{{"member", fam.label(v.coequalization_witness->first)}, {"x", v.coequalization_witness->second}}
          : Json(nullptr);
  j["is_constant"] = v.is_constant;
  j["constant_value"] = optional_element(v.constant_value);
  j["partition"] = p.blocks();
  return j;
}

Json to_json(const ModelCount& c, const SearchSpec& spec) {
  Json j;
  j["kind"] = "model_count";
  j["order"] = spec.order;
  j["latin"] = spec.require_latin;
  j["reduced"] = spec.reduced_only;
  j["up_to_iso"] = spec.up_to_iso;
  Json req = Json::array();
  for (const auto& id : spec.required_identities) req.push_back(to_string(id));
  Json forb = Json::array();
  for (const auto& id : spec.forbidden_identities) forb.push_back(to_string(id));
  j["required"] = req;
  j["forbidden"] = forb;
  j["raw"] = c.raw;
  j["iso_classes"] = c.iso_classes ? Json(*c.iso_classes) : Json(nullptr);
  return j;
}

std::string render_holds(const HoldsVerdict& v) {
  return v.holds ? "HOLDS\n" : "FAILS at " + format_assignment(*v.witness) + "\n";
}

std::string render_kunen(const KunenReport& r) {
  std::ostringstream out;
  out << "order: " << r.model_order << '\n';
  out << "quasigroup: " << (r.is_quasigroup ? "yes" : "no");
  if (r.latin_witness)
    out << " (" << (r.latin_witness->kind == LatinVerdict::Kind::Row ? "row " : "column ") << r.latin_witness->index
        << " repeats " << r.latin_witness->duplicated_value << ')';
  out << '\n';
  if (r.n1_evaluated) {
    out << "N1: " << (r.n1_holds ? "holds" : "fails at " + format_assignment(*r.n1_witness)) << '\n';
  } else {
    out << "N1: not evaluated\n";
  }
  for (const auto& s : r.steps) {
    out << "  " << std::left << std::setw(20) << step_name(s.step_id) << (s.passed ? "pass" : "FAIL");
    if (s.witness) out << "  " << format_assignment(*s.witness);
    out << '\n';
  }
  out << "identity element: " << (r.identity_element ? std::to_string(*r.identity_element) : "none") << '\n';
  out << "loop: " << (r.is_loop ? "yes" : "no") << '\n';
  return out.str();
}

std::string render_collapse(const CollapseVerdict& v, const BijectionFamily& fam, const Partition& p) {
  std::ostringstream out;
  auto mark = [](bool ok) { return ok ? "pass" : "FAIL"; };
  out << "idempotent:     " << mark(v.idempotent_ok);
  if (v.idempotent_witness) out << "  x=" << *v.idempotent_witness;
  out << "\ntransitivity:   " << mark(v.transitivity_ok);
  if (v.transitivity_witness) out << "  x=" << v.transitivity_witness->first << " y=" << v.transitivity_witness->second;
  out << "\ncoequalization: " << mark(v.coequalization_ok);
  if (v.coequalization_witness)
    out << "  " << fam.label(v.coequalization_witness->first) << " x=" << v.coequalization_witness->second;
  out << "\nconstant:       " << (v.is_constant ? "yes, value " + std::to_string(*v.constant_value) : "no");
  out << "\npartition:      " << render_partition(p) << '\n';
  return out.str();
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

}  // namespace qg::report

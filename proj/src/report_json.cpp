#include "dioph/report_json.hpp"

#include <stdexcept>

namespace dioph {

using nlohmann::json;

json certificate_json(const Certificate& cert) {
    json arr = json::array();
    for (const auto& w : cert.pairs) arr.push_back(json::array({w.i, w.j, w.root}));
    return arr;
}

json construction_report_json(const ConstructionReport& rep) {
    json j;
    j["field"] = rep.field_id;
    j["q"] = rep.q;
    j["method"] = method_name(rep.method);
    j["m"] = rep.m;
    j["Q"] = rep.Q_value;
    j["Q_floor"] = rep.Q_floor;
    j["y"] = rep.y ? json(*rep.y) : json(nullptr);
    j["r"] = rep.r ? json(*rep.r) : json(nullptr);
    j["elements"] = rep.elements;
    j["certificate"] = certificate_json(rep.certificate);
    j["verified"] = rep.verified;
    j["bound_satisfied"] = rep.bound_satisfied;
    j["bound_basis"] = basis_name(rep.basis);
    j["variant"] = rep.variant == QVariant::thm1 ? "thm1" : "thm35";
    j["seed"] = rep.seed;
    return j;
}

json clique_result_json(const Field& F, const CliqueResult& r) {
    json j;
    j["q"] = F.q();
    j["field"] = F.id();
    j["M"] = r.size;
    j["witness"] = r.witness;
    j["nodes"] = r.nodes_explored;
    return j;
}

Method method_from_flag(const std::string& name) {
    if (name == "case1") return Method::case1;
    if (name == "case2") return Method::case2;
    if (name == "mod8-3" || name == "mod8_3") return Method::mod8_3;
    if (name == "subfield") return Method::subfield;
    if (name == "greedy") return Method::greedy_fallback;
    throw std::invalid_argument("unknown method: " + name);
}

QVariant variant_from_flag(const std::string& name) {
    if (name == "thm1") return QVariant::thm1;
    if (name == "thm35") return QVariant::thm35;
    throw std::invalid_argument("unknown variant: " + name);
}

}  // namespace dioph

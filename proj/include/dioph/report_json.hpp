#pragma once

#include "json.hpp"

#include "dioph/constructions.hpp"
#include "dioph/diophantine.hpp"
#include "dioph/oracle.hpp"

namespace dioph {

nlohmann::json certificate_json(const Certificate& cert);
nlohmann::json construction_report_json(const ConstructionReport& rep);
nlohmann::json clique_result_json(const Field& F, const CliqueResult& r);

Method method_from_flag(const std::string& name);      // accepts "mod8-3" and "mod8_3"
QVariant variant_from_flag(const std::string& name);

}  // namespace dioph

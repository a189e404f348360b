#pragma once

// JSON forms of problems, markets and schedules. Readers re-run the same
// validation as the constructors.
//
//   matrix:   {"dim": d, "re": [[...]], "im": [[...]]}   ("im" optional)
//   problem:  {"alpha": a, "weights": [...], "states": [matrix, ...]}
//   classical:{"alpha": a, "weights": [...], "points": [[...], ...]}
//   market:   {"valuations": [[...]], "budgets": [...], "rho": [...], "rho_hat": [...]}
//   schedule: {"rounds": [[i, ...], ...]}

#include <nlohmann/json.hpp>

#include "augustin/capacity.hpp"
#include "augustin/fisher.hpp"

namespace augustin {

nlohmann::json to_json(const HermitianMatrix& m);
HermitianMatrix hermitian_from_json(const nlohmann::json& j);

nlohmann::json to_json(const RealVector& v);
RealVector vector_from_json(const nlohmann::json& j);
nlohmann::json to_json(const RealMatrix& m);
RealMatrix matrix_from_json(const nlohmann::json& j);

nlohmann::json to_json(const AugustinProblem& p);
AugustinProblem problem_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ClassicalAugustinProblem& p);
ClassicalAugustinProblem classical_from_json(const nlohmann::json& j);

nlohmann::json to_json(const FisherMarket& m);
FisherMarket market_from_json(const nlohmann::json& j);

nlohmann::json to_json(const UpdateSchedule& s);
UpdateSchedule schedule_from_json(const nlohmann::json& j);

}  // namespace augustin

#include "augustin/json_io.hpp"

#include "augustin/error.hpp"

namespace augustin {

using nlohmann::json;

namespace {

// nlohmann's own exceptions become InvalidInput so callers see one error type.
template <typename F>
auto guarded(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidInput, std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

json to_json(const RealVector& v) {
  return json(std::vector<double>(v.data(), v.data() + v.size()));
}

RealVector vector_from_json(const json& j) {
  return guarded([&] {
    const auto raw = j.get<std::vector<double>>();
    return RealVector(Eigen::Map<const RealVector>(raw.data(), static_cast<Eigen::Index>(raw.size())));
  });
}

json to_json(const RealMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) rows.push_back(to_json(RealVector(m.row(i).transpose())));
  return rows;
}

RealMatrix matrix_from_json(const json& j) {
  return guarded([&] {
    const auto rows = j.get<std::vector<std::vector<double>>>();
    if (rows.empty()) throw Error(ErrorKind::InvalidInput, "matrix has no rows");
    const auto cols = rows.front().size();
    RealMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw Error(ErrorKind::InvalidInput, "ragged matrix");
      for (std::size_t k = 0; k < cols; ++k) {
        m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = rows[i][k];
      }
    }
    return m;
  });
}

json to_json(const HermitianMatrix& m) {
  return {{"dim", m.dim()},
          {"re", to_json(RealMatrix(m.matrix().real()))},
          {"im", to_json(RealMatrix(m.matrix().imag()))}};
}

HermitianMatrix hermitian_from_json(const json& j) {
  return guarded([&] {
    const auto d = j.at("dim").get<Eigen::Index>();
    const RealMatrix re = matrix_from_json(j.at("re"));
    const RealMatrix im = j.contains("im") ? matrix_from_json(j.at("im")) : RealMatrix::Zero(d, d);
    if (re.rows() != d || re.cols() != d || im.rows() != d || im.cols() != d) {
      throw Error(ErrorKind::InvalidInput, "matrix does not match its dim");
    }
    ComplexMatrix m(d, d);
    m.real() = re;
    m.imag() = im;
    return HermitianMatrix(m);
  });
}

json to_json(const AugustinProblem& p) {
  json states = json::array();
  for (const auto& a : p.states()) states.push_back(to_json(a));
  return {{"alpha", p.alpha()}, {"weights", to_json(p.weights())}, {"states", states}};
}

AugustinProblem problem_from_json(const json& j) {
  return guarded([&] {
    std::vector<DensityMatrix> states;
    for (const auto& s : j.at("states")) states.emplace_back(hermitian_from_json(s));
    return AugustinProblem(std::move(states), vector_from_json(j.at("weights")),
                           Order(j.at("alpha").get<double>()));
  });
}

json to_json(const ClassicalAugustinProblem& p) {
  return {{"alpha", p.alpha()}, {"weights", to_json(p.weights())}, {"points", to_json(p.points())}};
}

ClassicalAugustinProblem classical_from_json(const json& j) {
  return guarded([&] {
    return ClassicalAugustinProblem(matrix_from_json(j.at("points")),
                                    vector_from_json(j.at("weights")),
                                    Order(j.at("alpha").get<double>()));
  });
}

json to_json(const FisherMarket& m) {
  return {{"valuations", to_json(m.valuations())},
          {"budgets", to_json(m.budgets())},
          {"rho", to_json(m.rho())},
          {"rho_hat", to_json(m.rho_hat())}};
}

FisherMarket market_from_json(const json& j) {
  return guarded([&] {
    return FisherMarket(matrix_from_json(j.at("valuations")), vector_from_json(j.at("budgets")),
                        vector_from_json(j.at("rho")), vector_from_json(j.at("rho_hat")));
  });
}

json to_json(const UpdateSchedule& s) { return {{"rounds", s.rounds}}; }

UpdateSchedule schedule_from_json(const json& j) {
  return guarded([&] {
    UpdateSchedule s{j.at("rounds").get<std::vector<std::vector<int>>>()};
    for (const auto& round : s.rounds) {
      if (round.empty()) throw Error(ErrorKind::InvalidInput, "schedule round is empty");
    }
    return s;
  });
}

}  // namespace augustin

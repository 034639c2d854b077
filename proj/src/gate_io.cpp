#include "duscar/gate_io.hpp"

namespace duscar {

nlohmann::json op_to_json(const Op& m) {
  auto rows = nlohmann::json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto row = nlohmann::json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

Op op_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty()) throw InvalidArgument("matrix JSON must be a nonempty array of rows");
  const std::size_t rows = j.size();
  const std::size_t cols = j.at(0).size();
  Op m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const auto& row = j.at(r);
    if (!row.is_array() || row.size() != cols) throw InvalidArgument("matrix JSON rows must have equal length");
    for (std::size_t c = 0; c < cols; ++c) {
      const auto& z = row.at(c);
      if (!z.is_array() || z.size() != 2) throw InvalidArgument("matrix entries must be [re, im] pairs");
      m(r, c) = cplx(z.at(0).get<double>(), z.at(1).get<double>());
    }
  }
  return m;
}

nlohmann::json gate_to_json(const DuGate& g) {
  if (g.gens.h.empty()) throw InvalidArgument("gate_to_json: gate has no generator provenance");
  nlohmann::json gens;
  gens["f_plus"] = op_to_json(g.gens.f_plus);
  gens["f_minus"] = op_to_json(g.gens.f_minus);
  gens["g_plus"] = op_to_json(g.gens.g_plus);
  gens["g_minus"] = op_to_json(g.gens.g_minus);
  gens["h"] = nlohmann::json::array();
  for (const auto& hj : g.gens.h) gens["h"].push_back(op_to_json(hj));
  return {{"d", g.d}, {"form", std::string(to_string(g.form))}, {"seed", g.seed}, {"generators", gens}};
}

DuGate gate_from_json(const nlohmann::json& j) {
  try {
    GenSet gens;
    const auto& jg = j.at("generators");
    gens.f_plus = op_from_json(jg.at("f_plus"));
    gens.f_minus = op_from_json(jg.at("f_minus"));
    gens.g_plus = op_from_json(jg.at("g_plus"));
    gens.g_minus = op_from_json(jg.at("g_minus"));
    for (const auto& hj : jg.at("h")) gens.h.push_back(op_from_json(hj));
    if (gens.dim() != j.at("d").get<int>()) throw InvalidArgument("gate JSON: d does not match generators");
    DuGate g = build_du1(gens, j.at("seed").get<std::uint64_t>());
    if (gate_form_from_string(j.at("form").get<std::string>()) == GateForm::DU2) g = build_du2(g);
    return g;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("gate JSON: ") + e.what());
  }
}

}  // namespace duscar

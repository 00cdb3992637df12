#include "seqdisc/config.hpp"

#include <fstream>
#include <string>
#include <vector>

#include "seqdisc/errors.hpp"

namespace seqdisc::config {

namespace {

Complex entry_from_json(const Json& j) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return Complex(j[0].get<double>(), j[1].get<double>());
  }
  throw InvalidParameter("matrix entry must be a number or an [re, im] pair, got " +
                         j.dump());
}

const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw InvalidParameter(std::string("missing config key \"") + key + "\"");
  }
  return j.at(key);
}

}  // namespace

Json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot read config file " + path.string());
  }
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InvalidParameter(std::string("config is not valid JSON: ") + e.what());
  }
}

CMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) {
    throw InvalidParameter("matrix must be a non-empty array of rows");
  }
  const size_t rows = j.size();
  const size_t cols = j[0].is_array() ? j[0].size() : 0;
  if (cols == 0) {
    throw InvalidParameter("matrix rows must be non-empty arrays");
  }
  CMatrix m(rows, cols);
  for (size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) {
      throw InvalidParameter("matrix rows have inconsistent lengths");
    }
    for (size_t k = 0; k < cols; ++k) {
      m(i, k) = entry_from_json(j[i][k]);
    }
  }
  return m;
}

Json matrix_to_json(const CMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      row.push_back({m(i, k).real(), m(i, k).imag()});
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

DensityOperator state_from_json(const Json& j) {
  if (j.is_object() && j.contains("bloch")) {
    const Json& b = j.at("bloch");
    if (!b.is_array() || b.size() != 3) {
      throw InvalidParameter("\"bloch\" must be a 3-vector");
    }
    return qubit_from_bloch(
        RVector3(b[0].get<double>(), b[1].get<double>(), b[2].get<double>()));
  }
  if (j.is_object() && j.contains("matrix")) {
    return DensityOperator(matrix_from_json(j.at("matrix")));
  }
  throw InvalidParameter("state needs a \"bloch\" or \"matrix\" key");
}

Ensemble ensemble_from_json(const Json& j) {
  const Json& states_json = require(j, "states");
  const Json& priors_json = require(j, "priors");
  if (!states_json.is_array() || !priors_json.is_array()) {
    throw InvalidParameter("\"states\" and \"priors\" must be arrays");
  }
  std::vector<DensityOperator> states;
  for (const Json& s : states_json) states.push_back(state_from_json(s));
  std::vector<double> priors;
  for (const Json& q : priors_json) {
    if (!q.is_number()) throw InvalidParameter("priors must be numbers");
    priors.push_back(q.get<double>());
  }
  return Ensemble(std::move(states), std::move(priors));
}

Instrument instrument_from_json(const Json& j) {
  const std::string type = require(j, "type").get<std::string>();
  if (type == "luders") {
    const Json& pj = require(j, "projectors");
    if (!pj.is_array() || pj.empty()) {
      throw InvalidParameter("\"projectors\" must be a non-empty array");
    }
    std::vector<CMatrix> projectors;
    for (const Json& p : pj) projectors.push_back(matrix_from_json(p));
    return luders_from_projectors(projectors);
  }
  if (type == "kraus") {
    const Json& oj = require(j, "outcomes");
    if (!oj.is_array() || oj.empty()) {
      throw InvalidParameter("\"outcomes\" must be a non-empty array");
    }
    std::vector<std::vector<CMatrix>> kraus;
    for (const Json& list : oj) {
      if (!list.is_array() || list.empty()) {
        throw InvalidParameter("every outcome needs a non-empty Kraus list");
      }
      std::vector<CMatrix> ops;
      for (const Json& k : list) ops.push_back(matrix_from_json(k));
      kraus.push_back(std::move(ops));
    }
    const int dim = static_cast<int>(kraus[0][0].rows());
    return Instrument(dim, std::move(kraus));
  }
  throw InvalidParameter("unknown instrument type \"" + type + "\"");
}

Channel channel_from_json(const Json& j, int dim) {
  const std::string type = require(j, "type").get<std::string>();
  if (type == "depolarizing") {
    return Channel::depolarizing(require(j, "gamma").get<double>());
  }
  if (type == "kraus") {
    const Json& mj = require(j, "matrices");
    if (!mj.is_array() || mj.empty()) {
      throw InvalidParameter("\"matrices\" must be a non-empty array");
    }
    std::vector<CMatrix> kraus;
    for (const Json& k : mj) kraus.push_back(matrix_from_json(k));
    const int d = static_cast<int>(kraus[0].rows());
    return Channel(d, std::move(kraus));
  }
  if (type == "identity") {
    return Channel::identity(dim);
  }
  throw InvalidParameter("unknown channel type \"" + type + "\"");
}

Protocol protocol_from_json(const Json& j) {
  const Json& rj = require(j, "receivers");
  if (!rj.is_array() || rj.empty()) {
    throw InvalidParameter("\"receivers\" must be a non-empty array");
  }
  std::vector<Instrument> receivers;
  for (const Json& r : rj) receivers.push_back(instrument_from_json(r));
  if (!j.contains("channels")) {
    return Protocol(std::move(receivers));
  }
  const Json& cj = j.at("channels");
  if (!cj.is_array()) {
    throw InvalidParameter("\"channels\" must be an array");
  }
  const int dim = receivers[0].dim();
  std::vector<Channel> channels;
  for (const Json& c : cj) channels.push_back(channel_from_json(c, dim));
  return Protocol(std::move(receivers), std::move(channels));
}

}  // namespace seqdisc::config

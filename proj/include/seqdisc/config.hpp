#pragma once

#include <filesystem>

#include <json.hpp>

#include "seqdisc/channels.hpp"
#include "seqdisc/discrimination.hpp"
#include "seqdisc/states.hpp"

namespace seqdisc::config {

using Json = nlohmann::json;

/// Loads a JSON config. Throws IoError when the file cannot be read and
/// InvalidParameter when it is not valid JSON.
Json load_json_file(const std::filesystem::path& path);

/// Complex matrix from a row-major array of rows; entries are [re, im]
/// pairs (a bare number is accepted as a real entry).
CMatrix matrix_from_json(const Json& j);
Json matrix_to_json(const CMatrix& m);

/// State from {"bloch": [x, y, z]} or {"matrix": [[...]]}.
DensityOperator state_from_json(const Json& j);

/// Ensemble from {"states": [...], "priors": [...]}.
Ensemble ensemble_from_json(const Json& j);

/// Instrument from {"type": "luders", "projectors": [...]} or
/// {"type": "kraus", "outcomes": [[m, ...], [m, ...], ...]}.
Instrument instrument_from_json(const Json& j);

/// Channel from {"type": "depolarizing", "gamma": g},
/// {"type": "kraus", "matrices": [...]} or {"type": "identity"};
/// `dim` resolves the identity channel's size.
Channel channel_from_json(const Json& j, int dim);

/// Protocol from {"receivers": [...], "channels": [...] (optional)}.
Protocol protocol_from_json(const Json& j);

}  // namespace seqdisc::config

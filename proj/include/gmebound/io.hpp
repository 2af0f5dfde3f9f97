#pragma once

#include "gmebound/bloch.hpp"
#include "gmebound/gme.hpp"
#include "gmebound/qstate.hpp"
#include "gmebound/tomo.hpp"

#include "json.hpp"

#include <string>

namespace gmebound::io {

using nlohmann::json;

/// { "dims": [...], "re": [[...]], "im": [[...]] }, row-major.
json state_to_json(const DensityMatrix& rho);
/// Validates every DensityMatrix invariant.
DensityMatrix state_from_json(const json& j);

DensityMatrix read_state_file(const std::string& path);
void write_state_file(const DensityMatrix& rho, const std::string& path);

/// { "M":, "N":, "q": [...], "p": [...], "B": [[...]] }.
json bloch_to_json(const bloch::BlochForm& bf);
bloch::BlochForm bloch_from_json(const json& j);

/// Flat object keyed by the ten measured parameter names.
json tomo_to_json(const bloch::TomoParams& tp);
bloch::TomoParams tomo_from_json(const json& j);
json reconstruction_to_json(const bloch::TomoReconstruction& r);

json report_to_json(const gme::BoundReport& r);

/// Shortest decimal string that reads back to the same double.
std::string format_double(double v);

}  // namespace gmebound::io

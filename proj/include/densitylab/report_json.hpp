// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "densitylab/bergman.hpp"
#include "densitylab/density.hpp"
#include "densitylab/finite_wh.hpp"
#include "densitylab/frame_core.hpp"
#include "densitylab/gabor.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>

namespace densitylab {

// Key order is fixed (ordered_json) and doubles serialize with exact
// round-trip formatting, so identical values give identical bytes.
using Json = nlohmann::ordered_json;

Json frame_system_to_json(const FrameSystem& f);
FrameSystem frame_system_from_json(const Json& j);

Json spectral_report_to_json(const SpectralReport& r);
Json wh_report_to_json(const wh::WHReport& r);
Json gabor_bounds_to_json(const gabor::GaborBoundsReport& r);
Json invariant_to_json(const density::Invariant& inv);
Json verdict_to_json(const density::Verdict& v);
Json kleppner_to_json(const density::KleppnerResult& r);
Json bergman_verdict_to_json(const bergman::BergmanVerdict& v);

// FNV-1a 64-bit over the serialized payload, hex encoded.
std::string fnv1a64_hex(const std::string& bytes);

// Minimal JSON-schema subset: type, required, properties, items, enum.
// Returns an empty string on success, else the first violation.
std::string validate_against_schema(const Json& doc, const Json& schema);

} // namespace densitylab

#ifndef NORMALFAM_JSON_IO_HPP
#define NORMALFAM_JSON_IO_HPP

#include <json.hpp>

#include <string>

#include "normalfam/criterion.hpp"
#include "normalfam/ratfun.hpp"
#include "normalfam/sphere.hpp"
#include "normalfam/zalcman.hpp"

namespace normalfam {

using ojson = nlohmann::ordered_json;

/// Profile file: {"A": [v...], "B": [v...], "C": [{"value": v, "m": int,
/// "M": number?}...]} with v = "inf" or the exact string "p/q+r/si".
ConditionProfile profile_from_json(const ojson& j);
ojson profile_to_json(const ConditionProfile& p);

/// Rational function file: {"num": ["c0", ...], "den": [...]} with exact
/// coefficient strings.
RationalFunction ratfun_from_json(const ojson& j);
ojson ratfun_to_json(const RationalFunction& f);

ojson verdict_to_json(const CriterionVerdict& v);
ojson witness_to_json(const WitnessSpec& w);
ojson defect_to_json(const DefectBound& d);
ojson hurwitz_to_json(const HurwitzCheck& h);
ojson preimage_profile_to_json(const PreimageProfile& p);
ojson growth_to_json(const GrowthReport& r);
ojson marty_to_json(const MartyReport& r);
ojson probe_to_json(const ProbeReport& r);
ojson trace_to_json(const RescalingTrace& t);

/// Grid CSV for one trace step: "xi_re,xi_im,g_re,g_im,sph,g1_re,g1_im,...".
std::string trace_step_csv(const RescalingTrace& t, size_t step);

/// Sample CSV: "re,im,sph_deriv".
std::string samples_csv(const std::vector<std::array<double, 3>>& samples);

/// Writes via a temp file + rename (atomic on POSIX).
void write_file_atomic(const std::string& path, const std::string& content);

} // namespace normalfam

#endif

#pragma once

#include <optional>
#include <string>

#include "json.hpp"
#include "qes/cdsi.hpp"
#include "qes/oracle.hpp"
#include "qes/potential.hpp"
#include "qes/verify.hpp"

namespace qes {

using Json = nlohmann::ordered_json;

/// Decimal or fraction text ("1", "-0.25", "3/4", "1e-3") as an exact
/// rational; nullopt for anything else.
std::optional<Rational> parse_rational(const std::string& text);

Json to_json(const PotentialSpec& spec);
Json to_json(const ExactPotentialSpec& spec);
PotentialSpec spec_from_json(const Json& j);

Json to_json(const WavefunctionForm& psi);
Json to_json(const TwoStateSolution<double>& sol);
/// Same layout with every coefficient as an exact fraction string.
Json to_json(const TwoStateSolution<Rational>& sol);

Json to_json(const SpectrumEstimate& est);
Json to_json(const VerificationReport& report);

}  // namespace qes

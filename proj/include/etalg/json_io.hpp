#pragma once

#include <json.hpp>

#include <string>

#include "etalg/pattern.hpp"
#include "etalg/rewriter.hpp"
#include "etalg/test_functions.hpp"

namespace etalg {

using Json = nlohmann::ordered_json;

// "num/den" with den > 0 and gcd 1; integers as "n".
Json rational_to_json(const Rational& q);
Json integer_to_json(const Integer& z);  // number when |z| < 2^53
Json presentation_to_json(const Presentation& P);
Json closedset_to_json(const ClosedSubset& S);
Json spectrum_to_json(const FiniteSpectrum& S);
Json profile_to_json(const ProfileElement& f);
Json testfn_to_json(const TestFunction& h);
Json pattern_to_json(const PatternHom& phi);
Json chain_to_json(const ChainSpec& spec);
Json certificate_to_json(const RewriteCertificate& cert);
Json witness_to_json(const InjectivityWitness& w);
Json report_to_json(const ValidationReport& rep);

// Parsers throw Error(schema) with a JSON pointer to the offending value.
// Top-level documents must carry the matching "schema" tag.
Rational rational_from_json(const Json& j, const std::string& path = "");
Presentation presentation_from_json(const Json& j, const std::string& path = "");
ClosedSubset closedset_from_json(const Json& j, const std::string& path = "");
FiniteSpectrum spectrum_from_json(const Json& j, const std::string& path = "");
ProfileElement profile_from_json(const Json& j, const std::string& path = "");
TestFunction testfn_from_json(const Json& j, const std::string& path = "");
PatternHom pattern_from_json(const Json& j, const std::string& path = "");
ChainSpec chain_from_json(const Json& j, const std::string& path = "");
RewriteCertificate certificate_from_json(const Json& j, const std::string& path = "");

// Parses text, reporting syntax errors as Error(schema).
Json parse_json(const std::string& text);

}  // namespace etalg

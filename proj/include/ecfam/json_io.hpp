#pragma once
// JSON documents for chain scripts, chains, search results and certificates.
// Integers are written as decimal strings so nothing is rounded.

#include <string>

#include "json.hpp"

#include "ecfam/chain.hpp"
#include "ecfam/heights.hpp"
#include "ecfam/search.hpp"

namespace ecfam {

using Json = nlohmann::ordered_json;

/// Throws std::invalid_argument on malformed scripts.
ChainScript parse_chain_script(const std::string& text);
ChainScript parse_chain_script(const Json& doc);
Json to_json(const ChainScript& script);

/// Integer coefficient array, lowest degree first, when p has integer
/// coefficients; otherwise "p/q" strings.
Json poly_to_json(const Poly& p);
Json ratfunc_to_json(const RatFunc& f, const std::string& var);
Json curve_to_json(const FCurve& E, const std::string& var);
Json chain_to_json(const FamilyChain& chain);

Json hit_to_json(const SearchHit& hit, const std::string& var);
Json search_to_json(const TorsionFamily& fam, const SearchConfig& cfg, const SearchResult& res);
Json rows_to_json(const std::vector<RowReport>& rows);

/// Gram matrix and determinant rounded to 6 decimals.
Json certificate_to_json(const RankCertificate& cert);

/// FNV-1a 64-bit of a byte string, as 16 hex digits.
std::string fnv1a64(const std::string& bytes);

}  // namespace ecfam

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "osn/datamodel.hpp"
#include "osn/tables.hpp"

namespace osn {

// Unit-cost edit distance, standard two-row dynamic programming.
std::size_t levenshtein(const std::string& a, const std::string& b);

// 1 - lev(a,b)/max(|a|,|b|), case-folded first. Callers guard empties.
double sim_username(const std::string& name_a, const std::string& name_b);

// Great-circle distance in km, Earth radius 6371.0 km.
double haversine_km(Coordinates a, Coordinates b);

// Coordinates pass through; text goes through the gazetteer. nullopt when the
// text is not in the gazetteer.
std::optional<Coordinates> resolve_location(const Location& loc, const Gazetteer& gaz);

// exp(-distance/tau_km)
double sim_location(Coordinates a, Coordinates b, double tau_km = 50.0);

// Probability of female. Stated gender wins; otherwise the username's first
// token (leading alphabetic run) is looked up in the name table.
std::optional<double> infer_gender(const Profile& p, const NameGenderTable& table);

// 1 - |g_a - g_b|
double sim_gender(double prob_female_a, double prob_female_b);

// (cosine+1)/2; nullopt when dims differ or either vector is zero.
std::optional<double> sim_photo(const std::vector<double>& emb_a,
                                const std::vector<double>& emb_b);

// Raw cosine of the 7-dim entity counts; nullopt when either is all-zero.
std::optional<double> sim_freetext(const EntityFeatureVector& a, const EntityFeatureVector& b);

// Mean nearest-neighbor gap between the timestamp lists pushed through
// exp(-m/tau). Iterates over the shorter list; equal lengths average both
// directions so the metric stays symmetric. Lists must be ascending (Profile
// invariant). nullopt when either list is empty.
std::optional<double> sim_activity(const std::vector<std::int64_t>& a,
                                   const std::vector<std::int64_t>& b,
                                   double tau_secs = 3600.0);

}  // namespace osn

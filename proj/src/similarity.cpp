#include "osn/similarity.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "osn/text.hpp"

namespace osn {

namespace {
constexpr double kEarthRadiusKm = 6371.0;
constexpr double kPi = 3.14159265358979323846;
}  // namespace

std::size_t levenshtein(const std::string& a, const std::string& b) {
    const std::size_t m = a.size(), n = b.size();
    if (m == 0) return n;
    if (n == 0) return m;
    std::vector<std::size_t> prev(n + 1), cur(n + 1);
    for (std::size_t j = 0; j <= n; ++j) prev[j] = j;
    for (std::size_t i = 1; i <= m; ++i) {
        cur[0] = i;
        for (std::size_t j = 1; j <= n; ++j) {
            const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
        }
        std::swap(prev, cur);
    }
    return prev[n];
}

double sim_username(const std::string& name_a, const std::string& name_b) {
    const std::string a = to_lower(name_a), b = to_lower(name_b);
    const std::size_t longest = std::max(a.size(), b.size());
    if (longest == 0) return 1.0;
    const double d = static_cast<double>(levenshtein(a, b));
    return 1.0 - d / static_cast<double>(longest);
}

double haversine_km(Coordinates a, Coordinates b) {
    const double phi1 = a.lat * kPi / 180.0;
    const double phi2 = b.lat * kPi / 180.0;
    const double dphi = (b.lat - a.lat) * kPi / 180.0;
    const double dlambda = (b.lon - a.lon) * kPi / 180.0;
    const double s1 = std::sin(dphi / 2.0), s2 = std::sin(dlambda / 2.0);
    const double h = s1 * s1 + std::cos(phi1) * std::cos(phi2) * s2 * s2;
    return 2.0 * kEarthRadiusKm * std::asin(std::min(1.0, std::sqrt(h)));
}

std::optional<Coordinates> resolve_location(const Location& loc, const Gazetteer& gaz) {
    if (loc.coords) return loc.coords;  // coordinates win when both present
    if (loc.text) {
        // trim before lookup; Gazetteer::lookup lowercases
        std::string t = *loc.text;
        const auto b = t.find_first_not_of(" \t\r\n");
        if (b == std::string::npos) return std::nullopt;
        const auto e = t.find_last_not_of(" \t\r\n");
        return gaz.lookup(t.substr(b, e - b + 1));
    }
    return std::nullopt;
}

double sim_location(Coordinates a, Coordinates b, double tau_km) {
    return std::exp(-haversine_km(a, b) / tau_km);
}

std::optional<double> infer_gender(const Profile& p, const NameGenderTable& table) {
    if (p.gender == Gender::female) return 1.0;
    if (p.gender == Gender::male) return 0.0;
    if (!p.username) return std::nullopt;
    // first whitespace token, then its leading alphabetic run ("mary_99" -> "mary")
    std::string token;
    for (const char c : *p.username) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            if (!token.empty()) break;
        } else {
            token.push_back(c);
        }
    }
    std::string name;
    for (const char c : token) {
        if (!std::isalpha(static_cast<unsigned char>(c))) break;
        name.push_back(c);
    }
    if (name.empty()) return std::nullopt;
    const auto counts = table.lookup(name);
    if (!counts) return std::nullopt;
    const double total = static_cast<double>(counts->female + counts->male);
    if (total == 0.0) return std::nullopt;
    return static_cast<double>(counts->female) / total;
}

double sim_gender(double prob_female_a, double prob_female_b) {
    return 1.0 - std::abs(prob_female_a - prob_female_b);
}

namespace {

template <typename T>
double dot(const T& a, const T& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += static_cast<double>(a[i]) * b[i];
    return s;
}

template <typename T>
double norm(const T& a) {
    return std::sqrt(dot(a, a));
}

}  // namespace

std::optional<double> sim_photo(const std::vector<double>& emb_a,
                                const std::vector<double>& emb_b) {
    if (emb_a.size() != emb_b.size() || emb_a.empty()) return std::nullopt;
    const double na = norm(emb_a), nb = norm(emb_b);
    if (na == 0.0 || nb == 0.0) return std::nullopt;
    const double c = dot(emb_a, emb_b) / (na * nb);
    return (std::clamp(c, -1.0, 1.0) + 1.0) / 2.0;
}

std::optional<double> sim_freetext(const EntityFeatureVector& a, const EntityFeatureVector& b) {
    if (a.all_zero() || b.all_zero()) return std::nullopt;
    const double c = dot(a.counts, b.counts) / (norm(a.counts) * norm(b.counts));
    return std::clamp(c, 0.0, 1.0);
}

namespace {

// mean over `from` of the min |t - s| over `to`; both sorted ascending
double mean_min_gap(const std::vector<std::int64_t>& from, const std::vector<std::int64_t>& to) {
    double sum = 0.0;
    for (const auto t : from) {
        auto it = std::lower_bound(to.begin(), to.end(), t);
        std::int64_t best = INT64_MAX;
        if (it != to.end()) best = std::min(best, *it - t);
        if (it != to.begin()) best = std::min(best, t - *(it - 1));
        sum += static_cast<double>(best);
    }
    return sum / static_cast<double>(from.size());
}

}  // namespace

std::optional<double> sim_activity(const std::vector<std::int64_t>& a,
                                   const std::vector<std::int64_t>& b, double tau_secs) {
    if (a.empty() || b.empty()) return std::nullopt;
    double m;
    if (a.size() < b.size()) {
        m = mean_min_gap(a, b);
    } else if (b.size() < a.size()) {
        m = mean_min_gap(b, a);
    } else {
        m = (mean_min_gap(a, b) + mean_min_gap(b, a)) / 2.0;
    }
    return std::exp(-m / tau_secs);
}

}  // namespace osn

#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "osn/rng.hpp"
#include "osn/similarity.hpp"

using namespace osn;

namespace {

// Independent edit-distance oracle: full-matrix DP, no row reuse.
std::size_t lev_oracle(const std::string& a, const std::string& b) {
    const std::size_t m = a.size(), n = b.size();
    std::vector<std::vector<std::size_t>> d(m + 1, std::vector<std::size_t>(n + 1));
    for (std::size_t i = 0; i <= m; ++i) d[i][0] = i;
    for (std::size_t j = 0; j <= n; ++j) d[0][j] = j;
    for (std::size_t i = 1; i <= m; ++i) {
        for (std::size_t j = 1; j <= n; ++j) {
            const std::size_t cost = a[i - 1] == b[j - 1] ? 0 : 1;
            d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1, d[i - 1][j - 1] + cost});
        }
    }
    return d[m][n];
}

// Independent great-circle oracle through 3D unit vectors.
double haversine_oracle_km(Coordinates a, Coordinates b) {
    const double rad = 3.14159265358979323846 / 180.0;
    const double ax = std::cos(a.lat * rad) * std::cos(a.lon * rad);
    const double ay = std::cos(a.lat * rad) * std::sin(a.lon * rad);
    const double az = std::sin(a.lat * rad);
    const double bx = std::cos(b.lat * rad) * std::cos(b.lon * rad);
    const double by = std::cos(b.lat * rad) * std::sin(b.lon * rad);
    const double bz = std::sin(b.lat * rad);
    const double cx = ay * bz - az * by;
    const double cy = az * bx - ax * bz;
    const double cz = ax * by - ay * bx;
    const double cross = std::sqrt(cx * cx + cy * cy + cz * cz);
    const double dot = ax * bx + ay * by + az * bz;
    return 6371.0 * std::atan2(cross, dot);
}

std::string random_word(Rng& rng, std::size_t max_len) {
    const std::string alphabet = "abcxyz";
    std::string s;
    const auto len = rng.below(max_len + 1);
    for (std::size_t i = 0; i < len; ++i) s.push_back(alphabet[rng.below(alphabet.size())]);
    return s;
}

}  // namespace

TEST_CASE("sim_username: pinned examples") {
    CHECK(sim_username("alice", "alice") == doctest::Approx(1.0));
    // lev(kitten, sitting) = 3
    CHECK(lev_oracle("kitten", "sitting") == 3);
    CHECK(sim_username("kitten", "sitting") == doctest::Approx(1.0 - 3.0 / 7.0));
    CHECK(sim_username("a", "zzzz") == doctest::Approx(0.0));
    // case folded before comparison
    CHECK(sim_username("Alice", "aLICE") == doctest::Approx(1.0));
}

TEST_CASE("sim_username agrees with the DP oracle on random pairs up to length 12") {
    Rng rng(2024);
    for (int trial = 0; trial < 2000; ++trial) {
        const auto a = random_word(rng, 12);
        const auto b = random_word(rng, 12);
        CHECK(levenshtein(a, b) == lev_oracle(a, b));
        if (!a.empty() && !b.empty()) {
            const double longest = static_cast<double>(std::max(a.size(), b.size()));
            CHECK(sim_username(a, b) ==
                  doctest::Approx(1.0 - static_cast<double>(lev_oracle(a, b)) / longest));
            CHECK(sim_username(a, b) == doctest::Approx(sim_username(b, a)));
        }
    }
}

TEST_CASE("haversine: antipodal and cross-country distances") {
    CHECK(haversine_km({0, 0}, {0, 180}) ==
          doctest::Approx(3.14159265358979323846 * 6371.0).epsilon(1e-9));
    const Coordinates nyc{40.7128, -74.0060}, la{34.0522, -118.2437};
    const double d = haversine_km(nyc, la);
    CHECK(d == doctest::Approx(haversine_oracle_km(nyc, la)).epsilon(1e-6));
    CHECK(sim_location(nyc, la) == doctest::Approx(std::exp(-d / 50.0)));
}

TEST_CASE("haversine matches the vector oracle on random coordinates") {
    Rng rng(7);
    for (int trial = 0; trial < 500; ++trial) {
        const Coordinates a{rng.uniform(-90, 90), rng.uniform(-180, 180)};
        const Coordinates b{rng.uniform(-90, 90), rng.uniform(-180, 180)};
        const double expected = haversine_oracle_km(a, b);
        CHECK(haversine_km(a, b) == doctest::Approx(expected).epsilon(1e-6));
        CHECK(haversine_km(a, b) == doctest::Approx(haversine_km(b, a)));
    }
}

TEST_CASE("sim_location: identity, monotonicity in distance") {
    CHECK(sim_location({41.5, -81.6}, {41.5, -81.6}) == doctest::Approx(1.0));
    // antipodal: exp(-400.3) underflows to ~0
    CHECK(sim_location({0, 0}, {0, 180}) < 1e-100);
    double prev = 1.0;
    for (double dlon = 0.1; dlon < 10.0; dlon += 0.5) {
        const double s = sim_location({0, 0}, {0, dlon});
        CHECK(s < prev);
        prev = s;
    }
}

TEST_CASE("resolve_location: coordinates win, gazetteer resolves text") {
    Gazetteer gaz;
    gaz.add("Cleveland", {41.4993, -81.6944});

    Location coords_only;
    coords_only.coords = Coordinates{41.5, -81.6};
    auto r = resolve_location(coords_only, gaz);
    REQUIRE(r.has_value());
    CHECK(r->lat == doctest::Approx(41.5));

    Location text_only;
    text_only.text = "  Cleveland ";
    r = resolve_location(text_only, gaz);
    REQUIRE(r.has_value());
    CHECK(r->lon == doctest::Approx(-81.6944));

    Location both;
    both.text = "Cleveland";
    both.coords = Coordinates{10.0, 20.0};
    r = resolve_location(both, gaz);
    REQUIRE(r.has_value());
    CHECK(r->lat == doctest::Approx(10.0));

    Location unknown;
    unknown.text = "Atlantis";
    CHECK(!resolve_location(unknown, gaz));
}

TEST_CASE("infer_gender: stated beats inferred, name table fallback") {
    NameGenderTable tbl;
    tbl.add("Mary", 7065, 0);
    tbl.add("pat", 300, 100);

    Profile p;
    p.gender = Gender::female;
    CHECK(infer_gender(p, tbl) == doctest::Approx(1.0));
    p.gender = Gender::male;
    CHECK(infer_gender(p, tbl) == doctest::Approx(0.0));

    p.gender = Gender::unstated;
    p.username = "mary_99";
    CHECK(infer_gender(p, tbl) == doctest::Approx(1.0));
    p.username = "Pat Smith";
    CHECK(infer_gender(p, tbl) == doctest::Approx(0.75));
    p.username = "xq7";
    CHECK(!infer_gender(p, tbl));
    p.username.reset();
    CHECK(!infer_gender(p, tbl));
}

TEST_CASE("sim_gender arithmetic") {
    CHECK(sim_gender(1.0, 1.0) == doctest::Approx(1.0));
    CHECK(sim_gender(1.0, 0.0) == doctest::Approx(0.0));
    CHECK(sim_gender(0.7, 0.2) == doctest::Approx(0.5));
    CHECK(sim_gender(0.2, 0.7) == doctest::Approx(0.5));
}

TEST_CASE("sim_photo: cosine mapped to [0,1]") {
    const std::vector<double> e1{1.0, 0.0}, e2{0.0, 1.0}, neg{-1.0, 0.0};
    CHECK(*sim_photo(e1, e1) == doctest::Approx(1.0));
    CHECK(*sim_photo(e1, e2) == doctest::Approx(0.5));
    CHECK(*sim_photo(e1, neg) == doctest::Approx(0.0));
    CHECK(!sim_photo(e1, {0.0, 0.0}));
    CHECK(!sim_photo(e1, {1.0, 0.0, 0.0}));  // dim mismatch
}

TEST_CASE("sim_photo invariant under positive scaling") {
    Rng rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> a(8), b(8);
        for (auto& v : a) v = rng.gauss();
        for (auto& v : b) v = rng.gauss();
        const double scale = rng.uniform(0.1, 50.0);
        auto a_scaled = a;
        for (auto& v : a_scaled) v *= scale;
        CHECK(*sim_photo(a, b) == doctest::Approx(*sim_photo(a_scaled, b)));
        CHECK(*sim_photo(a, b) == doctest::Approx(*sim_photo(b, a)));
    }
}

TEST_CASE("sim_freetext: entity-count cosine") {
    EntityFeatureVector a, b;
    a.counts = {1, 2, 0, 0, 0, 1, 0};
    b = a;
    CHECK(*sim_freetext(a, b) == doctest::Approx(1.0));

    a.counts = {1, 0, 0, 0, 0, 0, 0};
    b.counts = {0, 1, 0, 0, 0, 0, 0};
    CHECK(*sim_freetext(a, b) == doctest::Approx(0.0));

    a.counts = {2, 0, 0, 0, 0, 0, 0};
    b.counts = {1, 0, 0, 0, 0, 0, 0};
    CHECK(*sim_freetext(a, b) == doctest::Approx(1.0));  // scale invariance

    EntityFeatureVector zero;
    CHECK(!sim_freetext(a, zero));
}

namespace {

// quadratic scan oracle over the shorter list
double activity_oracle(std::vector<std::int64_t> a, std::vector<std::int64_t> b, double tau) {
    if (a.size() > b.size()) std::swap(a, b);
    auto mean_min = [](const std::vector<std::int64_t>& from,
                       const std::vector<std::int64_t>& to) {
        double sum = 0.0;
        for (const auto t : from) {
            double best = 1e300;
            for (const auto s : to) best = std::min(best, std::abs(double(t) - double(s)));
            sum += best;
        }
        return sum / static_cast<double>(from.size());
    };
    const double m = a.size() == b.size() ? (mean_min(a, b) + mean_min(b, a)) / 2.0
                                          : mean_min(a, b);
    return std::exp(-m / tau);
}

}  // namespace

TEST_CASE("sim_activity: pinned examples") {
    const std::vector<std::int64_t> same{100, 200, 300};
    CHECK(*sim_activity(same, same) == doctest::Approx(1.0));
    CHECK(*sim_activity({0}, {3600}) == doctest::Approx(std::exp(-1.0)));
    CHECK(*sim_activity({0, 7200}, {60, 7260}) == doctest::Approx(std::exp(-60.0 / 3600.0)));
    CHECK(!sim_activity({}, {1}));
    CHECK(!sim_activity({1}, {}));
}

TEST_CASE("sim_activity: oracle agreement, symmetry, offset invariance") {
    Rng rng(31337);
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<std::int64_t> a(1 + rng.below(8)), b(1 + rng.below(8));
        for (auto& t : a) t = rng.range(0, 50000);
        for (auto& t : b) t = rng.range(0, 50000);
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        CHECK(*sim_activity(a, b) == doctest::Approx(activity_oracle(a, b, 3600.0)));
        CHECK(*sim_activity(a, b) == doctest::Approx(*sim_activity(b, a)));

        // shifting BOTH lists by the same constant changes nothing
        auto a2 = a, b2 = b;
        const auto off = rng.range(-100000, 100000);
        for (auto& t : a2) t += off;
        for (auto& t : b2) t += off;
        CHECK(*sim_activity(a2, b2) == doctest::Approx(*sim_activity(a, b)));
    }
}

TEST_CASE("sim_activity: moving one list away decreases similarity") {
    const std::vector<std::int64_t> base{0, 1000, 2000};
    double prev = 1.0;
    for (std::int64_t shift = 500; shift <= 8000; shift += 1500) {
        std::vector<std::int64_t> moved;
        for (const auto t : base) moved.push_back(t + shift);
        const double s = *sim_activity(base, moved);
        CHECK(s < prev);
        prev = s;
    }
}

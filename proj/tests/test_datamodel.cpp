#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "osn/datamodel.hpp"

using namespace osn;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& content, const char* name) {
        path = (std::filesystem::temp_directory_path() / name).string();
        std::ofstream out(path);
        out << content;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("load_profiles: empty file yields empty dataset") {
    TempFile f("", "osn_empty.jsonl");
    const auto ds = load_profiles(f.path, NetworkLabel::auxiliary, DatasetRole::training);
    CHECK(ds.profiles.empty());
}

TEST_CASE("load_profiles: minimal record leaves other attributes missing") {
    TempFile f(R"({"id":"u1","username":"alice"})" "\n", "osn_minimal.jsonl");
    const auto ds = load_profiles(f.path, NetworkLabel::auxiliary, DatasetRole::training);
    REQUIRE(ds.profiles.size() == 1);
    const auto& p = ds.profiles[0];
    CHECK(p.id == "u1");
    CHECK(p.username == "alice");
    CHECK(!p.location);
    CHECK(p.gender == Gender::unstated);
    CHECK(!p.photo_embedding);
    CHECK(!p.freetext);
    CHECK(p.activities.empty());
    CHECK(p.posts.empty());
    CHECK(p.neighbors.empty());
}

TEST_CASE("load_profiles: duplicate id names the offender") {
    TempFile f(R"({"id":"u1"})" "\n" R"({"id":"u1"})" "\n", "osn_dup.jsonl");
    try {
        load_profiles(f.path, NetworkLabel::auxiliary, DatasetRole::training);
        FAIL("expected DataError");
    } catch (const DataError& e) {
        CHECK(std::string(e.what()).find("u1") != std::string::npos);
    }
}

TEST_CASE("load_profiles: unknown fields ignored, parse errors carry line numbers") {
    TempFile ok(R"({"id":"u1","follower_count":9})" "\n", "osn_unknown.jsonl");
    CHECK(load_profiles(ok.path, NetworkLabel::auxiliary, DatasetRole::training).profiles.size() ==
          1);

    TempFile bad("{\"id\":\"u1\"}\nnot json\n", "osn_badline.jsonl");
    try {
        load_profiles(bad.path, NetworkLabel::auxiliary, DatasetRole::training);
        FAIL("expected DataError");
    } catch (const DataError& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
}

TEST_CASE("load_profiles: invariant violations rejected") {
    SUBCASE("bad coordinates") {
        TempFile f(R"({"id":"u1","location":{"lat":95.0,"lon":0.0}})" "\n", "osn_badcoord.jsonl");
        CHECK_THROWS_AS(load_profiles(f.path, NetworkLabel::auxiliary, DatasetRole::training),
                        DataError);
    }
    SUBCASE("embedding dim mismatch within file") {
        TempFile f(R"({"id":"u1","photo_embedding":[1.0,0.0]})" "\n"
                   R"({"id":"u2","photo_embedding":[1.0,0.0,0.0]})" "\n",
                   "osn_dim.jsonl");
        CHECK_THROWS_AS(load_profiles(f.path, NetworkLabel::auxiliary, DatasetRole::training),
                        DataError);
    }
    SUBCASE("unsorted activities") {
        TempFile f(R"({"id":"u1","activities":[5,3]})" "\n", "osn_unsorted.jsonl");
        CHECK_THROWS_AS(load_profiles(f.path, NetworkLabel::auxiliary, DatasetRole::training),
                        DataError);
    }
    SUBCASE("neighbor outside network") {
        TempFile f(R"({"id":"u1","neighbors":["ghost"]})" "\n", "osn_ghost.jsonl");
        CHECK_THROWS_AS(load_profiles(f.path, NetworkLabel::auxiliary, DatasetRole::training),
                        DataError);
    }
}

TEST_CASE("profile round-trip: save then load is identity") {
    TempFile f(R"({"id":"u1","username":"alice","location":{"text":"cleveland"},"gender":"female","photo_embedding":[0.6,0.8],"freetext":"hi there","activities":[1,2,3],"posts":[{"ts":86400,"text":"hello world"}],"neighbors":["u2"]})"
               "\n" R"({"id":"u2","location":{"lat":41.5,"lon":-81.6},"neighbors":["u1"]})" "\n",
               "osn_rt.jsonl");
    const auto ds = load_profiles(f.path, NetworkLabel::target, DatasetRole::evaluation);
    const auto out = (std::filesystem::temp_directory_path() / "osn_rt_out.jsonl").string();
    save_profiles(ds, out);
    const auto ds2 = load_profiles(out, NetworkLabel::target, DatasetRole::evaluation);
    CHECK(ds == ds2);
    std::remove(out.c_str());
}

TEST_CASE("load_ground_truth: labels route rows, invariants enforced") {
    TempFile aux(R"({"id":"a1"})" "\n" R"({"id":"a2"})" "\n", "osn_gt_aux.jsonl");
    TempFile tgt(R"({"id":"t1"})" "\n" R"({"id":"t2"})" "\n", "osn_gt_tgt.jsonl");
    const auto da = load_profiles(aux.path, NetworkLabel::auxiliary, DatasetRole::training);
    const auto dt = load_profiles(tgt.path, NetworkLabel::target, DatasetRole::training);

    SUBCASE("direct mapping") {
        TempFile gt("aux_id,target_id,label\na1,t1,1\na2,t2,0\n", "osn_gt1.csv");
        const auto g = load_ground_truth(gt.path, da, dt);
        REQUIRE(g.coupled.size() == 1);
        CHECK(g.coupled[0] == std::pair<std::string, std::string>("a1", "t1"));
        REQUIRE(g.uncoupled.size() == 1);
        CHECK(g.uncoupled[0] == std::pair<std::string, std::string>("a2", "t2"));
    }
    SUBCASE("aux id coupled twice rejected") {
        TempFile gt("aux_id,target_id,label\na1,t1,1\na1,t2,1\n", "osn_gt2.csv");
        try {
            load_ground_truth(gt.path, da, dt);
            FAIL("expected DataError");
        } catch (const DataError& e) {
            CHECK(std::string(e.what()).find("a1") != std::string::npos);
        }
    }
    SUBCASE("empty body yields empty sets") {
        TempFile gt("aux_id,target_id,label\n", "osn_gt3.csv");
        const auto g = load_ground_truth(gt.path, da, dt);
        CHECK(g.coupled.empty());
        CHECK(g.uncoupled.empty());
    }
    SUBCASE("column order is significant") {
        // target ids in the aux column do not resolve
        TempFile gt("aux_id,target_id,label\nt1,a1,1\n", "osn_gt4.csv");
        CHECK_THROWS_AS(load_ground_truth(gt.path, da, dt), DataError);
    }
    SUBCASE("label outside {0,1} rejected") {
        TempFile gt("aux_id,target_id,label\na1,t1,2\n", "osn_gt5.csv");
        CHECK_THROWS_AS(load_ground_truth(gt.path, da, dt), DataError);
    }
}

TEST_CASE("attribute names round-trip") {
    for (int i = 0; i < kNumAttributes; ++i) {
        const auto a = static_cast<Attribute>(i);
        const auto back = attribute_from_name(attribute_name(a));
        REQUIRE(back.has_value());
        CHECK(*back == a);
    }
    CHECK(!attribute_from_name("nonsense"));
}

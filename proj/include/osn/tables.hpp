#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "osn/datamodel.hpp"

namespace osn {

// Local place-name lookup replacing an online geocoder.
// File format: CSV `name,lat,lon`, one place per line, no header.
struct Gazetteer {
    std::unordered_map<std::string, Coordinates> entries;  // lowercase name -> coords

    std::optional<Coordinates> lookup(const std::string& name) const;
    void add(const std::string& name, Coordinates c);
};

Gazetteer load_gazetteer(const std::string& path);
void save_gazetteer(const Gazetteer& gaz, const std::string& path);

// Given-name gender counts, SSA yobXXXX.txt layout: `Name,F|M,count`.
// Loading several year files sums the counts.
struct NameGenderTable {
    struct Counts {
        std::uint64_t female = 0;
        std::uint64_t male = 0;
    };
    std::unordered_map<std::string, Counts> entries;  // lowercase given name

    std::optional<Counts> lookup(const std::string& name) const;
    void add(const std::string& name, std::uint64_t female, std::uint64_t male);
};

NameGenderTable load_name_gender_table(const std::vector<std::string>& paths);
void save_name_gender_table(const NameGenderTable& tbl, const std::string& path);

// Counts over the seven entity categories extracted from freetext.
struct EntityFeatureVector {
    enum Category : int { location = 0, person, organization, money, percent, date, time };
    std::array<std::uint32_t, 7> counts{};

    bool all_zero() const {
        for (auto c : counts) {
            if (c != 0) return false;
        }
        return true;
    }
    bool operator==(const EntityFeatureVector&) const = default;
};

// One organization name per line.
std::vector<std::string> load_org_list(const std::string& path);

}  // namespace osn

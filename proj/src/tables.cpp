#include "osn/tables.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "osn/text.hpp"

namespace osn {

std::optional<Coordinates> Gazetteer::lookup(const std::string& name) const {
    auto it = entries.find(to_lower(name));
    if (it == entries.end()) return std::nullopt;
    return it->second;
}

void Gazetteer::add(const std::string& name, Coordinates c) {
    entries[to_lower(name)] = c;
}

Gazetteer load_gazetteer(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open gazetteer: " + path);
    Gazetteer gaz;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string name, lat_s, lon_s;
        if (!std::getline(ss, name, ',') || !std::getline(ss, lat_s, ',') ||
            !std::getline(ss, lon_s, ',')) {
            throw DataError("gazetteer line " + std::to_string(line_no) + ": malformed row");
        }
        Coordinates c{std::stod(lat_s), std::stod(lon_s)};
        if (c.lat < -90.0 || c.lat > 90.0 || c.lon < -180.0 || c.lon > 180.0) {
            throw DataError("gazetteer line " + std::to_string(line_no) +
                            ": coordinates out of range");
        }
        gaz.add(name, c);
    }
    return gaz;
}

void save_gazetteer(const Gazetteer& gaz, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write gazetteer: " + path);
    // sorted for reproducible output
    std::vector<std::string> names;
    names.reserve(gaz.entries.size());
    for (const auto& [n, c] : gaz.entries) names.push_back(n);
    std::sort(names.begin(), names.end());
    out.precision(17);
    for (const auto& n : names) {
        const auto& c = gaz.entries.at(n);
        out << n << ',' << c.lat << ',' << c.lon << '\n';
    }
}

std::optional<NameGenderTable::Counts> NameGenderTable::lookup(const std::string& name) const {
    auto it = entries.find(to_lower(name));
    if (it == entries.end()) return std::nullopt;
    return it->second;
}

void NameGenderTable::add(const std::string& name, std::uint64_t female, std::uint64_t male) {
    auto& c = entries[to_lower(name)];
    c.female += female;
    c.male += male;
}

NameGenderTable load_name_gender_table(const std::vector<std::string>& paths) {
    NameGenderTable tbl;
    for (const auto& path : paths) {
        std::ifstream in(path);
        if (!in) throw DataError("cannot open name table: " + path);
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (line.empty()) continue;
            std::istringstream ss(line);
            std::string name, sex, count_s;
            if (!std::getline(ss, name, ',') || !std::getline(ss, sex, ',') ||
                !std::getline(ss, count_s, ',')) {
                throw DataError("name table " + path + " line " + std::to_string(line_no) +
                                ": malformed row");
            }
            const auto count = static_cast<std::uint64_t>(std::stoull(count_s));
            if (sex == "F") {
                tbl.add(name, count, 0);
            } else if (sex == "M") {
                tbl.add(name, 0, count);
            } else {
                throw DataError("name table " + path + " line " + std::to_string(line_no) +
                                ": sex '" + sex + "' not in {F,M}");
            }
        }
    }
    return tbl;
}

void save_name_gender_table(const NameGenderTable& tbl, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write name table: " + path);
    std::vector<std::string> names;
    names.reserve(tbl.entries.size());
    for (const auto& [n, c] : tbl.entries) names.push_back(n);
    std::sort(names.begin(), names.end());
    for (const auto& n : names) {
        const auto& c = tbl.entries.at(n);
        if (c.female > 0) out << n << ",F," << c.female << '\n';
        if (c.male > 0) out << n << ",M," << c.male << '\n';
    }
}

std::vector<std::string> load_org_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open organization list: " + path);
    std::vector<std::string> orgs;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty()) orgs.push_back(to_lower(line));
    }
    return orgs;
}

}  // namespace osn

#include "osn/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace osn {

SimilarityMatrix pad_matrix(const SimilarityMatrix& z) {
    const std::size_t n = std::max(z.rows(), z.cols());
    if (z.rows() == z.cols()) return z;

    SimilarityMatrix out;
    out.row_ids = z.row_ids;
    out.col_ids = z.col_ids;
    for (std::size_t i = z.rows(); i < n; ++i) {
        out.row_ids.push_back(std::string(kDummyIdPrefix) + "row:" + std::to_string(i));
    }
    for (std::size_t j = z.cols(); j < n; ++j) {
        out.col_ids.push_back(std::string(kDummyIdPrefix) + "col:" + std::to_string(j));
    }
    out.z.assign(n * n, 0.0);
    for (std::size_t i = 0; i < z.rows(); ++i) {
        for (std::size_t j = 0; j < z.cols(); ++j) {
            out.at(i, j) = z.at(i, j);
        }
    }
    return out;
}

Assignment hungarian_solve(const SimilarityMatrix& z) {
    if (z.rows() != z.cols()) throw DataError("hungarian_solve: matrix must be square");
    const int n = static_cast<int>(z.rows());
    for (const auto v : z.z) {
        if (!std::isfinite(v)) throw DataError("hungarian_solve: non-finite entry");
    }

    // Shortest-augmenting-path form over cost = -Z with 1-based potentials;
    // column 0 is the virtual root.
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<int> match_col(n + 1, 0);  // column -> row matched to it
    std::vector<int> way(n + 1, 0);

    for (int i = 1; i <= n; ++i) {
        match_col[0] = i;
        int j0 = 0;
        std::vector<double> minv(n + 1, inf);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            const int i0 = match_col[j0];
            int j1 = 0;
            double delta = inf;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = -z.at(i0 - 1, j - 1) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {  // strict: first (smallest) column wins ties
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[match_col[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (match_col[j0] != 0);
        do {
            const int j1 = way[j0];
            match_col[j0] = match_col[j1];
            j0 = j1;
        } while (j0);
    }

    Assignment result;
    std::vector<int> row_to_col(n, -1);
    for (int j = 1; j <= n; ++j) {
        if (match_col[j]) row_to_col[match_col[j] - 1] = j - 1;
    }
    for (int i = 0; i < n; ++i) {
        const int j = row_to_col[i];
        result.matches.emplace_back(i, j);
        result.scores.push_back(z.at(i, j));
        result.total_score += z.at(i, j);
    }
    return result;
}

IdAssignment match_profiles(const SimilarityMatrix& z) {
    const auto padded = pad_matrix(z);
    const auto indexed = hungarian_solve(padded);

    IdAssignment out;
    for (std::size_t m = 0; m < indexed.matches.size(); ++m) {
        const auto [i, j] = indexed.matches[m];
        if (static_cast<std::size_t>(i) >= z.rows()) continue;  // dummy row
        if (static_cast<std::size_t>(j) >= z.cols()) continue;  // dummy col
        out.matches.push_back({z.row_ids[i], z.col_ids[j], indexed.scores[m]});
        out.total_score += indexed.scores[m];
    }
    return out;
}

void save_assignment(const IdAssignment& a, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write assignment: " + path);
    out << "aux_id,target_id,score\n";
    out.precision(17);
    for (const auto& m : a.matches) {
        out << m.aux_id << ',' << m.target_id << ',' << m.score << '\n';
    }
}

IdAssignment load_assignment(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open assignment: " + path);
    IdAssignment a;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        if (line_no == 1) {
            if (line != "aux_id,target_id,score") {
                throw DataError("assignment: expected header 'aux_id,target_id,score'");
            }
            continue;
        }
        std::istringstream ss(line);
        std::string aux, tgt, score;
        if (!std::getline(ss, aux, ',') || !std::getline(ss, tgt, ',') ||
            !std::getline(ss, score, ',')) {
            throw DataError("assignment line " + std::to_string(line_no) + ": malformed row");
        }
        a.matches.push_back({aux, tgt, std::stod(score)});
        a.total_score += a.matches.back().score;
    }
    return a;
}

}  // namespace osn

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "osn/datamodel.hpp"

namespace osn {

// One-to-one matching over matrix indices.
struct Assignment {
    std::vector<std::pair<int, int>> matches;  // (row, col), row-ascending
    std::vector<double> scores;                // Z at each match
    double total_score = 0.0;
};

// Matching translated back to profile ids, dummy matches dropped.
struct IdAssignment {
    struct Match {
        std::string aux_id;
        std::string target_id;
        double score = 0.0;
    };
    std::vector<Match> matches;
    double total_score = 0.0;
};

inline constexpr const char* kDummyIdPrefix = "__dummy:";

// Appends zero-similarity dummy rows or columns until the matrix is square.
// Dummy ids carry kDummyIdPrefix so they can be filtered afterwards.
SimilarityMatrix pad_matrix(const SimilarityMatrix& z);

// Maximum-total-similarity perfect matching on a square matrix via shortest
// augmenting paths on row/column potentials (O(N^3)); the paper's
// min sum -Z_ij x_ij formulation. Deterministic: rows augment in index order
// and column ties resolve to the smallest index. Throws on non-finite input.
Assignment hungarian_solve(const SimilarityMatrix& z);

// pad -> solve -> drop dummies -> translate to ids.
IdAssignment match_profiles(const SimilarityMatrix& z);

// CSV export: `aux_id,target_id,score`.
void save_assignment(const IdAssignment& a, const std::string& path);
IdAssignment load_assignment(const std::string& path);

}  // namespace osn

#pragma once

#include <array>
#include <optional>
#include <string>

#include "qtop/cohomology.hpp"
#include "qtop/frames.hpp"
#include "qtop/mesh.hpp"

namespace qtop {

/* A cell dimension, possibly only bounded when differentials beyond the
   computable regimes would have been needed. */
struct CellInterval {
    int lo = 0, hi = 0;
    bool exact() const { return lo == hi; }
};

struct Page {
    int r = 2;
    std::vector<std::vector<CellInterval>> cell;  // [i][j], 0<=i<=k+1, 0<=j<=n

    CellInterval at(int i, int j) const {
        if (i < 0 || j < 0 || i >= static_cast<int>(cell.size()) ||
            j >= static_cast<int>(cell[i].size()))
            return {0, 0};
        return cell[i][j];
    }
};

struct Differential {
    int r = 2, i = 0, j = 0;  // source cell
    Z2Matrix matrix;          // rows = target basis, cols = source basis
    std::string provenance;
};

struct SpectralTable {
    int n = 0, k = 0, mu = 0;
    std::vector<Page> pages;  // pages.front() is E_2
    std::vector<Differential> diffs;
    std::vector<std::array<int, 3>> unknown;  // (r, i, j) left as bounds
    std::optional<int> degenerate_at;
    bool bounds_only = false;
    std::vector<PairCohomology> pairs;  // pairs[j] = (cone, level j+1 subcomplex)

    const Differential* find_diff(int r, int i, int j) const;
    const Page& final_page() const { return pages.back(); }
};

/* E_2 from the cone pairs (one relative cohomology per stratum level),
   with representatives stored for the differential computations. */
SpectralTable assemble_E2(const OmegaComplex& cone, const QuadraticMap& map);

/* All second differentials at level j (sources (i, j), targets (i+2, j-1)),
   realized as cup products with the level-j holonomy cochain and expressed
   in the stored bases. No-op when every source or target vanishes. */
void compute_d2_level(SpectralTable& table, const OmegaComplex& cone, const QuadraticMap& map,
                      int j, const FrameOptions& opt);

/* The constant-index top differential d_{k+1} on cells (0,b) -> (k+1,b-k),
   given by the top Stiefel-Whitney evaluation. Requires i+ constant on the
   full sphere. When k = 1 this coincides with d_2 and the two routes are
   cross-checked. */
void compute_dk1_constant(SpectralTable& table, const OmegaComplex& base_mesh,
                          const QuadraticMap& map, const FrameOptions& opt);

/* Appends the next page: exact kernel/image updates where matrices exist,
   sound interval updates where a structurally possible differential was
   not computed. */
void page_turn(SpectralTable& table);

/* Drives pages to E_infinity: d_2 everywhere, the constant-index top
   differential when applicable, bounds elsewhere. */
void advance_to_infinity(SpectralTable& table, const OmegaComplex& cone,
                         const OmegaComplex& base_mesh, const QuadraticMap& map,
                         const FrameOptions& opt);

struct BettiEntry {
    int lo = 0, hi = 0;
    bool exact() const { return lo == hi; }
};

struct BettiReport {
    std::vector<BettiEntry> betti;  // degrees 0..n
    bool empty_certified = false;
    int mu = 0;
    std::vector<std::string> notes;
};

/* Betti numbers (or bounds) from the final page, with the guaranteed
   low-degree homology cross-check n >= mu + k built in. */
BettiReport betti_report(const SpectralTable& table);

/* rank of H_a(X) -> H_a(P^n) for a = 0..n, read off column 0. */
std::vector<BettiEntry> inclusion_rank(const SpectralTable& table);

}  // namespace qtop

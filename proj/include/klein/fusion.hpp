#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "klein/cyclo.hpp"
#include "klein/labels.hpp"

namespace klein {

/// Two formula families wrote different multiplicities for one triple, or a
/// row failed the exact quantum-dimension balance. Never silently resolved.
class ConflictError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A label pair was covered by no formula family and no symmetry image.
class IncompleteError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Plus iff i+j-l is divisible by 4. Requires i+j+l even.
Dec sign_rule(int i, int j, int l);

/// All l with |i-j| <= l <= min(i+j, 2k-i-j) and l = i+j (mod 2), ascending.
std::vector<int> affine_range(int i, int j, int k);

// ---- formula families -----------------------------------------------------
// Each takes canonical inputs and returns the canonicalized outcome (twisted
// weights folded, half-level sums expanded into their simple summands).

/// untwisted x untwisted
FusionOutcome fuse_uu(const Label& a, const Label& b, Level k);
/// untwisted x twisted with weight below k/2
FusionOutcome fuse_ut(const Label& a, const Label& b, Level k);
/// untwisted x half-level variant (even k)
FusionOutcome fuse_ut_half(const Label& a, const Label& b, Level k);
/// twisted x twisted in distinct sectors
FusionOutcome fuse_tt_cross(const Label& a, const Label& b, Level k);
/// twisted x twisted in one sector, closed through duality: the multiplicity
/// of untwisted C equals the multiplicity of b inside C x a.
FusionOutcome fuse_tt_same(const Label& a, const Label& b, Level k);

struct BuildOptions {
    int jobs = 0;            // <= 0: hardware concurrency
    bool check_qdim = true;  // exact balance of every row after the build
};

class FusionTable;
FusionTable build_table(Level k, const BuildOptions& opt = {});

/// The complete symmetric fusion tensor at one level. Immutable once built;
/// all reads are safe concurrently.
class FusionTable {
public:
    int level() const { return k_; }
    const std::vector<Label>& labels() const { return labels_; }
    std::size_t index_of(const Label& lab) const;

    const FusionOutcome& fuse(const Label& a, const Label& b) const;
    const FusionOutcome& fuse_by_index(std::size_t a, std::size_t b) const;
    int mult(const Label& a, const Label& b, const Label& c) const;

    const std::map<std::array<std::int32_t, 3>, std::int32_t>& triples() const {
        return triples_;
    }

    std::string to_json() const;
    static FusionTable from_json(const std::string& text);
    std::string to_csv() const;
    std::string to_text() const;

    bool operator==(const FusionTable& o) const {
        return k_ == o.k_ && labels_ == o.labels_ && triples_ == o.triples_;
    }

    /// Copy with one tensor entry replaced (indices into labels()); rows are
    /// rebuilt from the modified tensor. Intended for the mutation harness.
    FusionTable with_entry(std::size_t a, std::size_t b, std::size_t c,
                           std::int32_t mult) const;

private:
    friend FusionTable build_table(Level, const BuildOptions&);
    FusionTable(int k, std::vector<Label> labels,
                std::map<std::array<std::int32_t, 3>, std::int32_t> triples);
    void rebuild_rows();
    std::size_t pair_id(std::size_t a, std::size_t b) const;

    int k_ = 0;
    std::vector<Label> labels_;
    std::map<Label, std::size_t> index_;
    std::map<std::array<std::int32_t, 3>, std::int32_t> triples_;  // sorted keys
    std::vector<FusionOutcome> rows_;                              // per unordered pair
};

/// Exact balance D_a * D_b = sum_c N(a,b,c) * D_c for one pair.
bool qdim_balanced(const FusionTable& t, std::size_t a, std::size_t b,
                   const std::vector<CycNumber>& D);
std::vector<CycNumber> qdim_vector(const FusionTable& t);

/// Run fn(0..count-1) on up to `jobs` threads; rethrows the first exception.
void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& fn);

/// "label + label*2 + ..." (unit multiplicities left implicit).
std::string render_outcome(const FusionOutcome& out);

}  // namespace klein

#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace klein {

/// Level k of the affine algebra. Levels 1 and 2 are out of scope, so k >= 3.
class Level {
public:
    explicit Level(int k) : k_(k) {
        if (k < 3) throw std::invalid_argument("level k must be >= 3");
    }
    int value() const { return k_; }

private:
    int k_;
};

/// Sector of a module: E = untwisted, S1..S3 = twisted by the three involutions.
enum class Sector : std::uint8_t { E = 0, S1 = 1, S2 = 2, S3 = 3 };

/// Klein four-group law on sectors (E is the identity, Sr*Sr = E, S1*S2 = S3).
inline Sector sector_mul(Sector a, Sector b) {
    return static_cast<Sector>(static_cast<int>(a) ^ static_cast<int>(b));
}

/// Decoration of a module label. Plus/Minus decorate the two-dimensional
/// families; V1..V4 the four-fold variant splittings. The declaration order
/// is the canonical sort order.
enum class Dec : std::uint8_t { Plus = 0, Minus = 1, V1 = 2, V2 = 3, V3 = 4, V4 = 5 };

inline bool is_sign(Dec d) { return d == Dec::Plus || d == Dec::Minus; }
inline bool is_variant(Dec d) { return !is_sign(d); }
/// Variant index 1..4 of a V decoration.
inline int variant_index(Dec d) { return static_cast<int>(d) - 1; }
inline Dec variant_dec(int v) { return static_cast<Dec>(v + 1); }
inline Dec flip_sign(Dec d) { return d == Dec::Plus ? Dec::Minus : Dec::Plus; }

/// Klein four-group law on variant indices 1..4, with 1 the identity.
inline int variant_mul(int a, int b) { return ((a - 1) ^ (b - 1)) + 1; }

/// A canonical module label: the vacuum-involution basis for untwisted
/// variants, twisted weight folded into 0..floor(k/2).
struct Label {
    Sector sector = Sector::E;
    int i = 0;
    Dec dec = Dec::Plus;

    friend auto operator<=>(const Label&, const Label&) = default;
};

/// A label as the naming scheme writes it before identification rules are
/// applied: `basis` is the involution (1..3) whose coordinates the decoration
/// uses. Twisted labels must have basis equal to their own involution.
struct RawLabel {
    Sector sector = Sector::E;
    int basis = 1;
    int i = 0;
    Dec dec = Dec::Plus;
};

using FusionOutcome = std::map<Label, int>;

bool is_half_level(const Label& lab, int k);
bool is_canonical(const Label& lab, int k);

/// Translation between the canonical variant index and the sigma_r-basis
/// decoration index of an untwisted even-weight module (identification
/// tables; the map is an involution, so it is its own inverse).
int sigma_dec(int r, int v, int i);

/// Apply every identification rule and return the canonical label:
/// odd-weight Minus -> Plus, sigma_2/sigma_3 variants -> vacuum basis,
/// twisted weight reflection i -> k-i. A Plus/Minus decoration at twisted
/// weight k/2 names a reducible sum and is rejected (see expand_half).
Label canonicalize(const RawLabel& raw, Level k);

/// The two simple summands of the reducible half-level module
/// T_r(k/2)^[+-]: Plus -> {v1, v2}, Minus -> {v3, v4}.
FusionOutcome expand_half(Sector sector, Dec sign, Level k);

/// All canonical labels at level k in the canonical order
/// (sector, then weight, then decoration). The count is 11(k+1)/2 for odd k
/// and (11k+32)/2 for even k.
std::vector<Label> enumerate_labels(Level k);
std::size_t label_count(Level k);

std::string to_string(const Label& lab);
/// Parse a label string (`U:2:v1`, `T1:0:+`, ...) and canonicalize it.
/// Accepts any well-formed raw name for the level (e.g. `T1:4:+` at k=5).
Label parse_label(std::string_view text, Level k);

}  // namespace klein

#include "klein/labels.hpp"

#include <charconv>

namespace klein {

namespace {

[[noreturn]] void bad_label(const std::string& what) {
    throw std::invalid_argument("invalid label: " + what);
}

}  // namespace

bool is_half_level(const Label& lab, int k) {
    return lab.sector != Sector::E && k % 2 == 0 && lab.i == k / 2;
}

bool is_canonical(const Label& lab, int k) {
    if (lab.i < 0 || lab.i > k) return false;
    if (lab.sector == Sector::E) {
        if (lab.i % 2 == 1) return lab.dec == Dec::Plus;
        return is_variant(lab.dec);
    }
    if (2 * lab.i > k) return false;
    if (is_half_level(lab, k)) return is_variant(lab.dec);
    return is_sign(lab.dec);
}

int sigma_dec(int r, int v, int i) {
    // v1..v4 of L(k,i)^{sigma_r,*} against the vacuum-basis variants.
    static constexpr int s2[5] = {0, 1, 3, 2, 4};       // any even i
    static constexpr int s3_0[5] = {0, 1, 4, 3, 2};     // i in 4Z
    static constexpr int s3_2[5] = {0, 3, 2, 1, 4};     // i in 4Z+2
    switch (r) {
        case 1: return v;
        case 2: return s2[v];
        case 3: return (((i % 4) + 4) % 4 == 2) ? s3_2[v] : s3_0[v];
        default: throw std::invalid_argument("basis must be 1, 2 or 3");
    }
}

Label canonicalize(const RawLabel& raw, Level level) {
    const int k = level.value();
    if (raw.i < 0 || raw.i > k)
        bad_label("weight " + std::to_string(raw.i) + " out of range 0.." + std::to_string(k));
    if (raw.basis < 1 || raw.basis > 3) bad_label("basis must be 1, 2 or 3");

    if (raw.sector == Sector::E) {
        if (raw.i % 2 == 1) {
            if (!is_sign(raw.dec)) bad_label("odd untwisted weight takes +/- only");
            if (raw.basis != 1)
                bad_label("odd untwisted weights are only named in the vacuum basis");
            return {Sector::E, raw.i, Dec::Plus};
        }
        if (!is_variant(raw.dec)) bad_label("even untwisted weight takes v1..v4");
        int v = sigma_dec(raw.basis, variant_index(raw.dec), raw.i);
        return {Sector::E, raw.i, variant_dec(v)};
    }

    if (raw.basis != static_cast<int>(raw.sector))
        bad_label("twisted label basis must match its sector");
    int i = raw.i;
    if (2 * i > k) i = k - i;  // contragredient alias folds the weight
    if (k % 2 == 0 && i == k / 2) {
        if (is_sign(raw.dec))
            bad_label("T" + std::to_string(raw.basis) + ":" + std::to_string(i) +
                      ":+/- names a reducible sum; use the v1..v4 summands");
        return {raw.sector, i, raw.dec};
    }
    if (!is_sign(raw.dec)) bad_label("twisted weight below k/2 takes +/- only");
    return {raw.sector, i, raw.dec};
}

FusionOutcome expand_half(Sector sector, Dec sign, Level level) {
    const int k = level.value();
    if (k % 2 != 0) throw std::invalid_argument("expand_half: odd level has no half weight");
    if (sector == Sector::E) throw std::invalid_argument("expand_half: sector must be twisted");
    if (!is_sign(sign)) throw std::invalid_argument("expand_half: decoration must be +/-");
    FusionOutcome out;
    if (sign == Dec::Plus) {
        out[{sector, k / 2, Dec::V1}] = 1;
        out[{sector, k / 2, Dec::V2}] = 1;
    } else {
        out[{sector, k / 2, Dec::V3}] = 1;
        out[{sector, k / 2, Dec::V4}] = 1;
    }
    return out;
}

std::vector<Label> enumerate_labels(Level level) {
    const int k = level.value();
    std::vector<Label> out;
    out.reserve(label_count(level));
    for (int i = 0; i <= k; ++i) {
        if (i % 2 == 1) {
            out.push_back({Sector::E, i, Dec::Plus});
        } else {
            for (int v = 1; v <= 4; ++v) out.push_back({Sector::E, i, variant_dec(v)});
        }
    }
    for (Sector r : {Sector::S1, Sector::S2, Sector::S3}) {
        for (int i = 0; i <= (k - 1) / 2; ++i) {
            out.push_back({r, i, Dec::Plus});
            out.push_back({r, i, Dec::Minus});
        }
        if (k % 2 == 0)
            for (int v = 1; v <= 4; ++v) out.push_back({r, k / 2, variant_dec(v)});
    }
    return out;
}

std::size_t label_count(Level level) {
    const int k = level.value();
    return k % 2 == 1 ? std::size_t(11) * (k + 1) / 2 : (std::size_t(11) * k + 32) / 2;
}

std::string to_string(const Label& lab) {
    std::string s = lab.sector == Sector::E
                        ? "U"
                        : "T" + std::to_string(static_cast<int>(lab.sector));
    s += ":" + std::to_string(lab.i) + ":";
    switch (lab.dec) {
        case Dec::Plus: s += "+"; break;
        case Dec::Minus: s += "-"; break;
        default: s += "v" + std::to_string(variant_index(lab.dec));
    }
    return s;
}

Label parse_label(std::string_view text, Level k) {
    auto fail = [&] { bad_label(std::string(text)); };
    auto c1 = text.find(':');
    auto c2 = text.rfind(':');
    if (c1 == std::string_view::npos || c2 == c1) fail();
    std::string_view sec = text.substr(0, c1);
    std::string_view num = text.substr(c1 + 1, c2 - c1 - 1);
    std::string_view dec = text.substr(c2 + 1);

    RawLabel raw;
    if (sec == "U") {
        raw.sector = Sector::E;
        raw.basis = 1;
    } else if (sec.size() == 2 && sec[0] == 'T' && sec[1] >= '1' && sec[1] <= '3') {
        raw.sector = static_cast<Sector>(sec[1] - '0');
        raw.basis = sec[1] - '0';
    } else {
        fail();
    }
    auto [p, ec] = std::from_chars(num.data(), num.data() + num.size(), raw.i);
    if (ec != std::errc() || p != num.data() + num.size()) fail();
    if (dec == "+") raw.dec = Dec::Plus;
    else if (dec == "-") raw.dec = Dec::Minus;
    else if (dec.size() == 2 && dec[0] == 'v' && dec[1] >= '1' && dec[1] <= '4')
        raw.dec = variant_dec(dec[1] - '0');
    else fail();
    return canonicalize(raw, k);
}

}  // namespace klein

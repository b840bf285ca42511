#pragma once

// Exponent vectors (s1,...,s5) indexing the Mellin integrals, their pole
// vectors, and the dihedral symmetry of the pentagon.

#include <array>
#include <string>

#include "periodgram/errors.hpp"

namespace periodgram {

using Exp5 = std::array<long, 5>;

inline std::string to_string(const Exp5& s) {
    std::string out = "(";
    for (int i = 0; i < 5; ++i) out += std::to_string(s[i]) + (i < 4 ? "," : ")");
    return out;
}

inline Exp5 operator+(const Exp5& a, const Exp5& b) {
    return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3], a[4] + b[4]};
}

// p1 = s2+s3-s5, p2 = s3+s4-s1, p3 = s4+s5-s2, p4 = s5+s1-s3, p5 = s1+s2-s4
inline Exp5 pole_vector(const Exp5& s) {
    Exp5 p;
    for (int j = 0; j < 5; ++j) p[j] = s[(j + 1) % 5] + s[(j + 2) % 5] - s[(j + 4) % 5];
    return p;
}

// a_i = p_{i+1} + 1, indices cyclic mod 5
inline Exp5 a_params(const Exp5& s) {
    Exp5 p = pole_vector(s);
    Exp5 a;
    for (int i = 0; i < 5; ++i) a[i] = p[(i + 1) % 5] + 1;
    return a;
}

// All ten symmetries of the pentagon applied to s.
inline std::array<Exp5, 10> dihedral_images(const Exp5& s) {
    std::array<Exp5, 10> out;
    for (int k = 0; k < 5; ++k)
        for (int i = 0; i < 5; ++i) out[static_cast<size_t>(k)][i] = s[(i + k) % 5];
    for (int k = 0; k < 5; ++k)
        for (int i = 0; i < 5; ++i)
            out[static_cast<size_t>(5 + k)][i] = s[((k - i) % 5 + 5) % 5];
    return out;
}

// Lexicographically smallest element of the dihedral orbit; used as memo key.
inline Exp5 dihedral_orbit(const Exp5& s) {
    auto images = dihedral_images(s);
    Exp5 best = images[0];
    for (const auto& im : images)
        if (im < best) best = im;
    return best;
}

}  // namespace periodgram

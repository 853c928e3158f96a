#pragma once

#include <cstdlib>
#include <string>
#include <vector>

namespace qpr {

// Lattice vector nu in Z^d.  Used for Fourier mode labels and line momenta.
using Multi = std::vector<int>;

inline int l1_norm(const Multi& v) {
    int s = 0;
    for (int c : v) s += std::abs(c);
    return s;
}

inline bool is_zero(const Multi& v) {
    for (int c : v)
        if (c != 0) return false;
    return true;
}

inline Multi add(const Multi& a, const Multi& b) {
    Multi r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline Multi sub(const Multi& a, const Multi& b) {
    Multi r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline Multi negate(const Multi& a) {
    Multi r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
    return r;
}

// Canonical representative of {nu, -nu}: first nonzero component positive.
inline Multi canonical_sign(const Multi& v) {
    for (int c : v) {
        if (c > 0) return v;
        if (c < 0) return negate(v);
    }
    return v;
}

inline std::string to_string(const Multi& v) {
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(v[i]);
    }
    s += ")";
    return s;
}

}  // namespace qpr

#pragma once

#include <cstdint>

namespace sternmu {

template <typename T>
struct vec2 {
    T x, y;
    constexpr bool operator==(const vec2&) const = default;
};

template <typename T>
struct mat2 {
    T a, b, c, d;  // [[a,b],[c,d]]

    constexpr bool operator==(const mat2&) const = default;

    constexpr mat2 operator*(const mat2& m) const {
        return {a * m.a + b * m.c, a * m.b + b * m.d,
                c * m.a + d * m.c, c * m.b + d * m.d};
    }
    constexpr vec2<T> operator*(const vec2<T>& v) const {
        return {a * v.x + b * v.y, c * v.x + d * v.y};
    }
    constexpr mat2 operator+(const mat2& m) const {
        return {a + m.a, b + m.b, c + m.c, d + m.d};
    }
    constexpr T trace() const { return a + d; }
    constexpr T det() const { return a * d - b * c; }
};

using mat2i = mat2<std::int64_t>;

// Linear representation of the diatomic sequence: s(n) is the top-right
// entry of the digit product S_{b_k} ... S_{b_0} over the binary expansion
// of n.  S_0 + S_1 has eigenvalues 3 and 1.
struct linear_rep {
    mat2i s0{1, 0, 1, 1};
    mat2i s1{1, 1, 0, 1};
    vec2<std::int64_t> v{1, 0};

    constexpr bool valid() const {
        const mat2i q = s0 + s1;
        return s0 == mat2i{1, 0, 1, 1} && s1 == mat2i{1, 1, 0, 1} &&
               v == vec2<std::int64_t>{1, 0} && q.trace() == 4 && q.det() == 3;
    }
};

inline constexpr linear_rep stern_rep{};

}  // namespace sternmu

#pragma once

#include <cmath>
#include <cstddef>

namespace halomd {

template <typename T>
struct Vec3T {
    T x{}, y{}, z{};

    Vec3T() = default;
    Vec3T(T x_, T y_, T z_) : x(x_), y(y_), z(z_) {}

    T& operator[](std::size_t i) { return i == 0 ? x : (i == 1 ? y : z); }
    const T& operator[](std::size_t i) const { return i == 0 ? x : (i == 1 ? y : z); }

    Vec3T operator+(const Vec3T& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3T operator-(const Vec3T& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3T operator*(T s) const { return {x * s, y * s, z * s}; }
    Vec3T operator/(T s) const { return {x / s, y / s, z / s}; }
    Vec3T operator-() const { return {-x, -y, -z}; }

    Vec3T& operator+=(const Vec3T& o) {
        x += o.x;
        y += o.y;
        z += o.z;
        return *this;
    }
    Vec3T& operator-=(const Vec3T& o) {
        x -= o.x;
        y -= o.y;
        z -= o.z;
        return *this;
    }
    Vec3T& operator*=(T s) {
        x *= s;
        y *= s;
        z *= s;
        return *this;
    }

    bool operator==(const Vec3T& o) const { return x == o.x && y == o.y && z == o.z; }
};

template <typename T>
inline Vec3T<T> operator*(T s, const Vec3T<T>& v) {
    return v * s;
}

template <typename T>
inline T dot(const Vec3T<T>& a, const Vec3T<T>& b) {
    return a.x * b.x + a.y * b.y + a.z * b.z;
}

template <typename T>
inline Vec3T<T> cross(const Vec3T<T>& a, const Vec3T<T>& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

template <typename T>
inline T norm2(const Vec3T<T>& a) {
    return dot(a, a);
}

template <typename T>
inline T norm(const Vec3T<T>& a) {
    return std::sqrt(dot(a, a));
}

using Vec3 = Vec3T<double>;
using Vec3f = Vec3T<float>;

template <typename T>
inline Vec3T<T> to_vec(const Vec3& v) {
    return {static_cast<T>(v.x), static_cast<T>(v.y), static_cast<T>(v.z)};
}

} // namespace halomd

#pragma once

#include <cmath>
#include <cstdint>

#include "projbound/matrix.hpp"

namespace projbound {

/// splitmix64 step; used to expand seeds and to derive substreams.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/**
 * xoshiro256++ generator. Chosen over std::mt19937 + distributions because
 * the full byte stream (including the Gaussian transform below) is pinned by
 * this header, not by the standard library, so seeded runs reproduce across
 * toolchains.
 */
class Xoshiro256PlusPlus {
public:
    explicit Xoshiro256PlusPlus(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& word : state_) word = splitmix64(sm);
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Standard normal via Box-Muller; one value per call, spare cached.
    double gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 == 0.0) u1 = uniform();
        const double u2 = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 6.283185307179586476925286766559 * u2;
        spare_ = radius * std::sin(angle);
        has_spare_ = true;
        return radius * std::cos(angle);
    }

    /// Complex standard normal (unit-variance real and imaginary parts).
    Complex complex_gaussian() {
        const double re = gaussian();
        const double im = gaussian();
        return Complex(re, im);
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::uint64_t state_[4] = {};
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// Derived seed for (seed, index) substreams.
inline std::uint64_t splitmix64_combine(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t mix = seed ^ (0x9e3779b97f4a7c15ULL * (index + 1));
    return splitmix64(mix);
}

/// Independent substream for (seed, index); parallel and serial evaluation of
/// indexed samples therefore agree.
inline Xoshiro256PlusPlus substream(std::uint64_t seed, std::uint64_t index) {
    return Xoshiro256PlusPlus(splitmix64_combine(seed, index));
}

inline ComplexMatrix random_gaussian_matrix(Xoshiro256PlusPlus& rng, std::size_t rows, std::size_t cols) {
    ComplexMatrix g(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) g(i, j) = rng.complex_gaussian();
    return g;
}

/**
 * Haar-distributed unitary: modified Gram-Schmidt QR of a complex Gaussian
 * matrix with real positive R diagonal (the phase-corrected convention), with
 * one re-orthogonalization pass.
 */
inline ComplexMatrix haar_unitary(Xoshiro256PlusPlus& rng, std::size_t n) {
    ComplexMatrix q = random_gaussian_matrix(rng, n, n);
    for (std::size_t j = 0; j < n; ++j) {
        for (int pass = 0; pass < 2; ++pass)
            for (std::size_t k = 0; k < j; ++k) {
                Complex dot(0.0, 0.0);
                for (std::size_t i = 0; i < n; ++i) dot += std::conj(q(i, k)) * q(i, j);
                for (std::size_t i = 0; i < n; ++i) q(i, j) -= dot * q(i, k);
            }
        double norm_sq = 0.0;
        for (std::size_t i = 0; i < n; ++i) norm_sq += std::norm(q(i, j));
        const double inv = 1.0 / std::sqrt(norm_sq);
        for (std::size_t i = 0; i < n; ++i) q(i, j) *= inv;
    }
    return q;
}

/// Random Hermitian matrix (G + G^*)/2 with Gaussian G.
inline ComplexMatrix random_hermitian(Xoshiro256PlusPlus& rng, std::size_t n) {
    const ComplexMatrix g = random_gaussian_matrix(rng, n, n);
    ComplexMatrix h(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) h(i, j) = 0.5 * (g(i, j) + std::conj(g(j, i)));
    return h;
}

}  // namespace projbound

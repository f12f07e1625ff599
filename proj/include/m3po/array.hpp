#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "m3po/errors.hpp"

namespace m3po {

// Dense row-major real array. Immutable by convention once published:
// ops below are pure functions returning fresh arrays. All reductions
// run sequentially in index-ascending order so results are bit-reproducible.
template <class S>
struct Array {
    std::vector<int> shape;
    std::vector<S> data;

    Array() = default;

    explicit Array(std::vector<int> shp) : shape(std::move(shp)) {
        data.assign(numel_of(shape), S(0));
    }

    Array(std::vector<int> shp, std::vector<S> values)
        : shape(std::move(shp)), data(std::move(values)) {
        if (numel_of(shape) != data.size()) {
            throw ShapeError("array: shape/data size mismatch");
        }
    }

    Array(std::initializer_list<S> values)
        : shape{static_cast<int>(values.size())}, data(values) {}

    static std::size_t numel_of(const std::vector<int>& shp) {
        std::size_t n = 1;
        for (int d : shp) {
            if (d <= 0) throw ShapeError("array: non-positive dimension");
            n *= static_cast<std::size_t>(d);
        }
        return n;
    }

    std::size_t numel() const { return data.size(); }

    int rows() const {
        if (shape.size() != 2) throw ShapeError("array: rows() needs 2-d shape");
        return shape[0];
    }
    int cols() const {
        if (shape.size() != 2) throw ShapeError("array: cols() needs 2-d shape");
        return shape[1];
    }

    S& at(int r, int c) { return data[static_cast<std::size_t>(r) * cols() + c]; }
    const S& at(int r, int c) const { return data[static_cast<std::size_t>(r) * cols() + c]; }

    S& operator[](std::size_t i) { return data[i]; }
    const S& operator[](std::size_t i) const { return data[i]; }

    std::span<S> row(int r) {
        return std::span<S>(data.data() + static_cast<std::size_t>(r) * cols(), cols());
    }
    std::span<const S> row(int r) const {
        return std::span<const S>(data.data() + static_cast<std::size_t>(r) * cols(), cols());
    }

    bool same_shape(const Array& other) const { return shape == other.shape; }

    bool all_finite() const {
        for (S v : data) {
            if (!std::isfinite(v)) return false;
        }
        return true;
    }

    void check_finite(const char* where) const {
        if (!all_finite()) {
            throw NumericError(std::string("non-finite value in ") + where);
        }
    }
};

using ArrayF = Array<float>;
using ArrayD = Array<double>;

// A probability vector over the vocabulary at one decode step.
template <class S>
using TokenDistribution = Array<S>;

// Numerically stable temperature softmax. Subtracts the row max before
// exponentiation; the output sums to 1 within dtype tolerance and is
// invariant under adding a constant to all logits.
template <class S>
Array<S> stable_softmax(const Array<S>& logits, S temperature) {
    if (temperature <= S(0)) {
        throw ConfigError("stable_softmax: temperature must be positive");
    }
    if (logits.numel() == 0) throw ShapeError("stable_softmax: empty input");
    logits.check_finite("stable_softmax input");

    Array<S> out(logits.shape);
    S max_logit = logits.data[0];
    for (S v : logits.data) max_logit = std::max(max_logit, v);

    S denom = 0;
    for (std::size_t i = 0; i < logits.numel(); ++i) {
        out.data[i] = std::exp((logits.data[i] - max_logit) / temperature);
        denom += out.data[i];
    }
    for (std::size_t i = 0; i < logits.numel(); ++i) out.data[i] /= denom;
    return out;
}

// Cosine similarity of two equal-length vectors. Zero-norm input is an
// error surface; valid token distributions always have positive norm.
template <class S>
S cosine(const Array<S>& u, const Array<S>& v) {
    if (u.numel() != v.numel()) throw ShapeError("cosine: length mismatch");
    S dot = 0, nu = 0, nv = 0;
    for (std::size_t i = 0; i < u.numel(); ++i) {
        dot += u.data[i] * v.data[i];
        nu += u.data[i] * u.data[i];
        nv += v.data[i] * v.data[i];
    }
    if (nu <= S(0) || nv <= S(0)) {
        throw NumericError("cosine: zero-norm input");
    }
    S c = dot / (std::sqrt(nu) * std::sqrt(nv));
    return std::clamp(c, S(-1), S(1));
}

} // namespace m3po

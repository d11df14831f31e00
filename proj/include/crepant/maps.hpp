#pragma once

#include <string>
#include <vector>

#include "crepant/matrix.hpp"
#include "crepant/scalars.hpp"

namespace crepant {

/// Basis-scaling map: one nonzero scalar per basis element.
class DiagonalMap {
public:
    explicit DiagonalMap(std::vector<GaussRational> scalars) : scalars_(std::move(scalars)) {
        for (size_t i = 0; i < scalars_.size(); ++i)
            if (scalars_[i].is_zero())
                throw SingularMap("diagonal map scalar " + std::to_string(i) + " is zero");
    }

    static DiagonalMap identity(size_t n) {
        return DiagonalMap(std::vector<GaussRational>(n, GaussRational(1)));
    }

    size_t size() const { return scalars_.size(); }
    const GaussRational& at(size_t i) const { return scalars_[i]; }
    const std::vector<GaussRational>& scalars() const { return scalars_; }

    Mat<GaussRational> matrix() const {
        Mat<GaussRational> m(size(), size());
        for (size_t i = 0; i < size(); ++i) m(i, i) = scalars_[i];
        return m;
    }

private:
    std::vector<GaussRational> scalars_;
};

/// General linear candidate map, stored as a full square matrix whose
/// column j is the image of source basis element j. Degree-block structure
/// is validated against the two bases at verification time.
class LinearMap {
public:
    explicit LinearMap(Mat<GaussRational> m) : m_(std::move(m)) {
        if (m_.rows() != m_.cols())
            throw ShapeMismatch("linear map matrix must be square");
    }

    size_t size() const { return m_.rows(); }
    const Mat<GaussRational>& matrix() const { return m_; }

    /// Image of source basis element j as a coefficient vector.
    std::vector<GaussRational> image(size_t j) const {
        std::vector<GaussRational> out(size());
        for (size_t i = 0; i < size(); ++i) out[i] = m_(i, j);
        return out;
    }

    std::vector<GaussRational> apply(const std::vector<GaussRational>& v) const {
        return mat_vec(m_, v);
    }

private:
    Mat<GaussRational> m_;
};

} // namespace crepant

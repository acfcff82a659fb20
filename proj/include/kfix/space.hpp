#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace kfix {

/// Point of a finite-dimensional real coordinate space. Dimension is fixed at
/// construction and is at least one; matrices are stored flattened row-major.
class Vector {
public:
    explicit Vector(std::vector<double> components);
    Vector(std::initializer_list<double> components);

    static Vector zeros(std::size_t dimension);
    static Vector filled(std::size_t dimension, double value);

    std::size_t dimension() const noexcept { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }
    double& operator[](std::size_t i) { return values_[i]; }

    std::span<const double> values() const noexcept { return values_; }
    const std::vector<double>& components() const noexcept { return values_; }

    bool all_finite() const noexcept;

    friend bool operator==(const Vector&, const Vector&) = default;

private:
    std::vector<double> values_;
};

/// Throws UsageError naming `where` when the dimensions differ.
void require_same_dimension(const Vector& u, const Vector& v, std::string_view where);

Vector operator+(const Vector& u, const Vector& v);
Vector operator-(const Vector& u, const Vector& v);
Vector operator-(const Vector& v);
Vector operator*(double alpha, const Vector& v);

double dot(const Vector& u, const Vector& v);

/// (1 - lambda) p + lambda q, componentwise.
Vector affine_combine(double lambda, const Vector& p, const Vector& q);

enum class NormKind { l1, l2, linf, matrix_max };

std::string_view to_string(NormKind kind);
/// Parses "l1" | "l2" | "linf" | "matrix_max"; throws UsageError otherwise.
NormKind parse_norm_kind(std::string_view name);

/// Coordinate space R^d with one of the supported norms. The matrix_max norm
/// (largest absolute entry) views vectors as rows x cols matrices.
class NormedSpace {
public:
    NormedSpace(std::size_t dimension, NormKind kind);
    static NormedSpace matrix(std::size_t rows, std::size_t cols);

    std::size_t dimension() const noexcept { return dimension_; }
    NormKind norm_kind() const noexcept { return kind_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    double norm(const Vector& v) const;
    double distance(const Vector& u, const Vector& v) const { return norm(u - v); }

    friend bool operator==(const NormedSpace&, const NormedSpace&) = default;

private:
    std::size_t dimension_;
    NormKind kind_;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
};

double norm(const NormedSpace& space, const Vector& v);

} // namespace kfix

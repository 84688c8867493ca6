#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <cmath>
#include <string>
#include <vector>

#include "cheegraph/graph.hpp"

namespace cheegraph {

/// Dirichlet form matrix on an ordered subset U: diagonal n(x) + c(x) (full
/// weighted degree, couplings that leave U contribute to the diagonal only),
/// off-diagonal -b(x,y) for both endpoints in U. M_diag carries the measures.
struct FormMatrix {
    Subset subset;
    Eigen::SparseMatrix<double> Q;
    Eigen::VectorXd M_diag;
};

inline FormMatrix assemble(const WeightedGraph& g, const Subset& U) {
    if (U.empty()) throw InputError("assemble: U must be nonempty");
    if (!is_sorted_unique(U)) throw InputError("assemble: U must be sorted and duplicate-free");
    const int k = static_cast<int>(U.size());
    std::vector<int> local(static_cast<std::size_t>(g.size()), -1);
    for (int i = 0; i < k; ++i) {
        const VertexId x = U[static_cast<std::size_t>(i)];
        if (x < 0 || x >= g.size()) throw InputError("assemble: vertex id out of range");
        local[static_cast<std::size_t>(x)] = i;
    }

    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(U.size() * 4);
    Eigen::VectorXd m(k);
    for (int i = 0; i < k; ++i) {
        const VertexId x = U[static_cast<std::size_t>(i)];
        m(i) = g.measure(x);
        triplets.emplace_back(i, i, g.weighted_degree(x) + g.potential(x));
        for (const auto& [y, w] : g.neighbors(x)) {
            if (!(w > 0.0) || y == x) continue;
            const int j = local[static_cast<std::size_t>(y)];
            if (j >= 0) triplets.emplace_back(i, j, -w);
        }
    }
    FormMatrix form;
    form.subset = U;
    form.Q.resize(k, k);
    form.Q.setFromTriplets(triplets.begin(), triplets.end());
    form.M_diag = m;
    return form;
}

// Q(u) for a function given on the subset, evaluated through the matrix.
inline double form_value(const FormMatrix& form, const Eigen::VectorXd& u) {
    return u.dot(form.Q * u);
}

enum class SolveMethod { dense, iterative };

inline std::string to_string(SolveMethod m) {
    return m == SolveMethod::dense ? "dense" : "iterative";
}

struct SpectralResult {
    double lambda0 = 0.0;
    std::vector<double> eigenvector;  // aligned with the form's subset, |u|_m = 1
    double residual = 0.0;
    SolveMethod method = SolveMethod::dense;
    int iterations = 0;
};

struct SolveOptions {
    int dense_limit = 500;
    double residual_tolerance = 1e-8;  // on |Qu - lambda M u| relative to |Mu|
    int max_krylov = 200;
};

namespace detail {

inline void fix_sign(Eigen::VectorXd& u) {
    int imax = 0;
    double vmax = 0.0;
    for (int i = 0; i < u.size(); ++i)
        if (std::abs(u(i)) > vmax) {
            vmax = std::abs(u(i));
            imax = i;
        }
    if (u(imax) < 0.0) u = -u;
}

inline SpectralResult finish(const FormMatrix& form, double lambda, Eigen::VectorXd v,
                             SolveMethod method, int iterations, double residual_tolerance) {
    // v is the eigenvector of the symmetrized problem; map back u = M^{-1/2} v.
    const Eigen::VectorXd inv_sqrt_m = form.M_diag.cwiseSqrt().cwiseInverse();
    Eigen::VectorXd u = inv_sqrt_m.cwiseProduct(v);
    u /= v.norm();  // |u|_m = |v|_2
    fix_sign(u);
    if (lambda < 0.0 && lambda > -1e-10) lambda = 0.0;
    const Eigen::VectorXd mu = form.M_diag.cwiseProduct(u);
    const Eigen::VectorXd residual_vec = form.Q * u - lambda * mu;
    SpectralResult result;
    result.lambda0 = lambda;
    result.residual = residual_vec.norm();
    result.method = method;
    result.iterations = iterations;
    result.eigenvector.assign(u.data(), u.data() + u.size());
    if (method == SolveMethod::iterative &&
        !(result.residual <= residual_tolerance * std::max(mu.norm(), 1e-300)))
        throw ConvergenceError("lambda0: iterative solver residual " +
                                   std::to_string(result.residual) + " exceeds tolerance",
                               result.residual);
    return result;
}

}  // namespace detail

/// Bottom eigenvalue of the pencil (Q, M) through the symmetrization
/// M^{-1/2} Q M^{-1/2}: dense solver below SolveOptions::dense_limit,
/// shift-inverted Lanczos above. The eigenvector sign is fixed so its
/// largest-magnitude entry is positive.
inline SpectralResult lambda0(const FormMatrix& form, SolveOptions opts = {}) {
    const int n = static_cast<int>(form.subset.size());
    const Eigen::VectorXd inv_sqrt_m = form.M_diag.cwiseSqrt().cwiseInverse();

    if (n <= opts.dense_limit) {
        Eigen::MatrixXd a = Eigen::MatrixXd(form.Q);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) a(i, j) *= inv_sqrt_m(i) * inv_sqrt_m(j);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a);
        return detail::finish(form, solver.eigenvalues()(0), solver.eigenvectors().col(0),
                              SolveMethod::dense, 0, opts.residual_tolerance);
    }

    // Lanczos with full reorthogonalization on (A + eps I)^{-1}; its largest
    // Ritz value corresponds to the bottom of A.
    Eigen::SparseMatrix<double> a(n, n);
    {
        std::vector<Eigen::Triplet<double>> triplets;
        triplets.reserve(static_cast<std::size_t>(form.Q.nonZeros()));
        for (int col = 0; col < form.Q.outerSize(); ++col)
            for (Eigen::SparseMatrix<double>::InnerIterator it(form.Q, col); it; ++it)
                triplets.emplace_back(it.row(), it.col(),
                                      it.value() * inv_sqrt_m(it.row()) * inv_sqrt_m(it.col()));
        a.setFromTriplets(triplets.begin(), triplets.end());
    }
    double scale = 0.0;
    for (int i = 0; i < n; ++i) scale = std::max(scale, a.coeff(i, i));
    const double eps = std::max(scale, 1.0) * 1e-14;
    Eigen::SparseMatrix<double> shifted = a;
    for (int i = 0; i < n; ++i) shifted.coeffRef(i, i) += eps;
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> factor(shifted);
    if (factor.info() != Eigen::Success)
        throw ConvergenceError("lambda0: factorization of the shifted operator failed", -1.0);

    Eigen::MatrixXd basis(n, opts.max_krylov);
    Eigen::VectorXd alpha(opts.max_krylov), beta(opts.max_krylov);
    Eigen::VectorXd v = form.M_diag.cwiseSqrt();
    v.normalize();
    basis.col(0) = v;
    double achieved = std::numeric_limits<double>::infinity();
    int steps = 0;
    double lambda = 0.0;
    Eigen::VectorXd ritz;
    for (int j = 0; j < opts.max_krylov; ++j) {
        Eigen::VectorXd w = factor.solve(basis.col(j));
        alpha(j) = basis.col(j).dot(w);
        w -= alpha(j) * basis.col(j);
        if (j > 0) w -= beta(j - 1) * basis.col(j - 1);
        // full reorthogonalization, two passes
        for (int pass = 0; pass < 2; ++pass)
            for (int i = 0; i <= j; ++i) w -= basis.col(i).dot(w) * basis.col(i);
        beta(j) = w.norm();
        steps = j + 1;

        const bool last = (j + 1 == opts.max_krylov) || beta(j) < 1e-13;
        if (last || (j >= 4 && (j % 5) == 4)) {
            Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(steps, steps);
            for (int i = 0; i < steps; ++i) {
                tri(i, i) = alpha(i);
                if (i + 1 < steps) tri(i, i + 1) = tri(i + 1, i) = beta(i);
            }
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tsolver(tri);
            const int top = steps - 1;  // largest Ritz value of the inverse
            const double theta = tsolver.eigenvalues()(top);
            ritz = basis.leftCols(steps) * tsolver.eigenvectors().col(top);
            ritz.normalize();
            lambda = 1.0 / theta - eps;
            const Eigen::VectorXd res = a * ritz - lambda * ritz;
            achieved = res.norm();
            // Work to a stricter target in the symmetrized space; the pencil
            // residual is checked once more against the contract in finish().
            if (achieved <= 1e-2 * opts.residual_tolerance * std::max(1.0, std::abs(lambda)) ||
                last)
                break;
        }
        if (beta(j) < 1e-13) break;
        basis.col(j + 1) = w / beta(j);
    }
    if (ritz.size() == 0)
        throw ConvergenceError("lambda0: Lanczos produced no Ritz pair", achieved);
    return detail::finish(form, lambda, ritz, SolveMethod::iterative, steps,
                          opts.residual_tolerance);
}

}  // namespace cheegraph

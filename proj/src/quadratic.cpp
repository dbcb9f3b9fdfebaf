#include "qtop/quadratic.hpp"

#include "qtop/jacobi.hpp"

namespace qtop {

QuadraticForm::QuadraticForm(RatMat m) : dim(m.rows), q(std::move(m)) {
    require(q.rows == q.cols, ErrKind::Dimension, "form matrix must be square");
    for (int i = 0; i < dim; ++i)
        for (int j = i + 1; j < dim; ++j)
            require(q.at(i, j) == q.at(j, i), ErrKind::Validation, "form matrix must be symmetric");
    shadow.resize(static_cast<size_t>(dim) * dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) shadow[static_cast<size_t>(i) * dim + j] = to_double(q.at(i, j));
}

QuadraticForm QuadraticForm::zero(int n) { return QuadraticForm(RatMat(n, n)); }

QuadraticForm QuadraticForm::identity(int n) { return QuadraticForm(RatMat::identity(n)); }

QuadraticForm QuadraticForm::diag(const RatVec& d) {
    RatMat m(static_cast<int>(d.size()), static_cast<int>(d.size()));
    for (size_t i = 0; i < d.size(); ++i) m.at(static_cast<int>(i), static_cast<int>(i)) = d[i];
    return QuadraticForm(std::move(m));
}

QuadraticForm negate(const QuadraticForm& f) {
    RatMat m = f.q;
    for (Rat& r : m.a) r = -r;
    return QuadraticForm(std::move(m));
}

QuadraticMap::QuadraticMap(int n_, std::vector<QuadraticForm> fs) : n(n_), forms(std::move(fs)) {
    require(!forms.empty(), ErrKind::Dimension, "a quadratic map needs at least one form");
    k = static_cast<int>(forms.size()) - 1;
    for (const auto& f : forms)
        require(f.dim == n + 1, ErrKind::Dimension, "all forms must live on R^{n+1}");
}

RatVec QuadraticMap::evaluate(const RatVec& x) const {
    require(static_cast<int>(x.size()) == n + 1, ErrKind::Dimension, "evaluate: point length mismatch");
    RatVec out(forms.size());
    for (size_t i = 0; i < forms.size(); ++i) out[i] = dot(x, mat_vec(forms[i].q, x));
    return out;
}

QuadraticForm evaluate_pencil(const QuadraticMap& map, const RatVec& omega) {
    require(static_cast<int>(omega.size()) == map.k + 1, ErrKind::Dimension,
            "pencil coefficient vector must have k+1 entries");
    RatMat m(map.n + 1, map.n + 1);
    for (int t = 0; t <= map.k; ++t) {
        if (omega[t] == 0) continue;
        const RatMat& f = map.forms[t].q;
        for (size_t idx = 0; idx < m.a.size(); ++idx) m.a[idx] += omega[t] * f.a[idx];
    }
    return QuadraticForm(std::move(m));
}

/* Symmetric congruence reduction: diagonal pivots when available; when the
   whole remaining diagonal vanishes, a row+column addition turns a nonzero
   off-diagonal entry into a usable pivot (char 0). Counts signs. */
Inertia inertia_exact(const QuadraticForm& form) {
    RatMat A = form.q;
    const int n = form.dim;
    Inertia out;
    int i = 0;
    while (i < n) {
        int piv = -1;
        for (int r = i; r < n; ++r)
            if (A.at(r, r) != 0) { piv = r; break; }
        if (piv < 0) {
            int pr = -1, pc = -1;
            for (int r = i; r < n && pr < 0; ++r)
                for (int c = r + 1; c < n; ++c)
                    if (A.at(r, c) != 0) { pr = r; pc = c; break; }
            if (pr < 0) {
                out.zero += n - i;
                break;
            }
            for (int t = i; t < n; ++t) A.at(pr, t) += A.at(pc, t);
            for (int t = i; t < n; ++t) A.at(t, pr) += A.at(t, pc);
            piv = pr;
        }
        if (piv != i) {
            for (int t = i; t < n; ++t) std::swap(A.at(piv, t), A.at(i, t));
            for (int t = i; t < n; ++t) std::swap(A.at(t, piv), A.at(t, i));
        }
        const Rat d = A.at(i, i);
        for (int r = i + 1; r < n; ++r) {
            if (A.at(r, i) == 0) continue;
            Rat f = A.at(r, i) / d;
            for (int t = i; t < n; ++t) A.at(r, t) -= f * A.at(i, t);
        }
        for (int r = i + 1; r < n; ++r) {
            if (A.at(i, r) == 0) continue;
            Rat f = A.at(i, r) / d;
            for (int t = i; t < n; ++t) A.at(t, r) -= f * A.at(t, i);
        }
        if (d > 0)
            ++out.pos;
        else
            ++out.neg;
        ++i;
    }
    return out;
}

Inertia inertia_float(const QuadraticForm& form, double tol) {
    require(tol > 0, ErrKind::Validation, "inertia_float: tol must be positive");
    JacobiEigen e = jacobi_eigen(form.shadow, form.dim);
    Inertia out;
    for (double v : e.values) {
        if (v > tol)
            ++out.pos;
        else if (v < -tol)
            ++out.neg;
        else
            ++out.zero;
    }
    return out;
}

QuadraticForm restrict_to_subspace(const QuadraticForm& form, const std::vector<RatVec>& basis) {
    require(!basis.empty(), ErrKind::Rank, "restriction basis is empty");
    RatMat B = columns_matrix(basis);
    require(B.rows == form.dim, ErrKind::Dimension, "basis vector length must equal form dim");
    require(mat_rank(B) == B.cols, ErrKind::Rank, "restriction basis is linearly dependent");
    return QuadraticForm(congruence(form.q, B));
}

QuadraticMap hat_extend(const QuadraticMap& map) {
    std::vector<QuadraticForm> fs;
    fs.reserve(map.forms.size() + 1);
    fs.push_back(negate(QuadraticForm::identity(map.n + 1)));
    for (const auto& f : map.forms) fs.push_back(f);
    return QuadraticMap(map.n, std::move(fs));
}

int inertia_bilinear_shortcut(const RatMat& L) {
    require(L.rows == L.cols, ErrKind::Dimension, "bilinear shortcut expects a square matrix");
    return mat_rank(L);
}

QuadraticForm bilinear_block_form(const RatMat& L) {
    require(L.rows == L.cols, ErrKind::Dimension, "bilinear block form expects a square matrix");
    const int m = L.rows;
    RatMat Q(2 * m, 2 * m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            Q.at(i, m + j) = L.at(i, j) / 2;
            Q.at(m + j, i) = L.at(i, j) / 2;
        }
    return QuadraticForm(std::move(Q));
}

}  // namespace qtop

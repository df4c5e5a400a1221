#include "scpd/scoreloss.hpp"

namespace scpd {
namespace {

double ipow(double x, int k) {
    double r = 1.0;
    for (int i = 0; i < k; ++i) r *= x;
    return r;
}

}  // namespace

std::string BasisSpec::name() const {
    if (input_dim > 0) {
        if (monomials == poly_basis(input_dim, 1).monomials) return "poly1";
        if (monomials == poly_basis(input_dim, 2).monomials) return "poly2";
    }
    return "custom";
}

void validate(const BasisSpec& spec) {
    if (spec.input_dim < 1) throw std::invalid_argument("BasisSpec: input_dim must be >= 1");
    if (spec.monomials.empty()) throw std::invalid_argument("BasisSpec: no monomials");
    for (const auto& m : spec.monomials) {
        if (static_cast<Index>(m.size()) != spec.input_dim) {
            throw std::invalid_argument("BasisSpec: exponent vector length != input_dim");
        }
        int degree = 0;
        for (int e : m) {
            if (e < 0) throw std::invalid_argument("BasisSpec: negative exponent");
            degree += e;
        }
        if (degree == 0) throw std::invalid_argument("BasisSpec: constant monomial");
    }
}

BasisSpec poly_basis(Index n, int degree) {
    if (n < 1) throw std::invalid_argument("poly_basis: n must be >= 1");
    if (degree != 1 && degree != 2) {
        throw std::invalid_argument("poly_basis: unsupported degree " + std::to_string(degree));
    }
    BasisSpec spec;
    spec.input_dim = n;
    const auto un = static_cast<std::size_t>(n);
    for (std::size_t i = 0; i < un; ++i) {
        std::vector<int> m(un, 0);
        m[i] = 1;
        spec.monomials.push_back(m);
    }
    if (degree == 2) {
        for (std::size_t i = 0; i < un; ++i) {
            std::vector<int> m(un, 0);
            m[i] = 2;
            spec.monomials.push_back(m);
        }
        for (std::size_t i = 0; i < un; ++i) {
            for (std::size_t j = i + 1; j < un; ++j) {
                std::vector<int> m(un, 0);
                m[i] = 1;
                m[j] = 1;
                spec.monomials.push_back(m);
            }
        }
    }
    return spec;
}

BasisSpec basis_from_name(const std::string& name, Index n) {
    if (name == "poly1") return poly_basis(n, 1);
    if (name == "poly2") return poly_basis(n, 2);
    throw std::invalid_argument("unknown basis '" + name + "' (expected poly1 or poly2)");
}

FeatureDerivatives eval_derivatives(const BasisSpec& spec, const Vector& x) {
    if (x.size() != spec.input_dim) {
        throw std::invalid_argument("eval_derivatives: dimension mismatch");
    }
    const Index d = spec.param_dim();
    const Index n = spec.input_dim;
    FeatureDerivatives out{Matrix::Zero(d, n), Vector::Zero(d)};
    for (Index i = 0; i < d; ++i) {
        const auto& e = spec.monomials[static_cast<std::size_t>(i)];
        for (Index k = 0; k < n; ++k) {
            const int ek = e[static_cast<std::size_t>(k)];
            if (ek == 0) continue;
            // Product over the other coordinates.
            double rest = 1.0;
            for (Index m = 0; m < n; ++m) {
                if (m != k) rest *= ipow(x(m), e[static_cast<std::size_t>(m)]);
            }
            out.grad(i, k) = ek * ipow(x(k), ek - 1) * rest;
            if (ek >= 2) out.laplacian(i) += ek * (ek - 1) * ipow(x(k), ek - 2) * rest;
        }
    }
    return out;
}

QuadraticLoss build_loss(const BasisSpec& spec, const Vector& x) {
    const FeatureDerivatives fd = eval_derivatives(spec, x);
    QuadraticLoss loss;
    loss.a = fd.grad * fd.grad.transpose();
    loss.b = -fd.laplacian;
    return loss;
}

}  // namespace scpd

#include "qubitmech/basis.hpp"

#include <cmath>
#include <sstream>

#include "qubitmech/errors.hpp"

namespace qubitmech {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

std::size_t BasisSpec::dimension() const {
    return std::visit(
        [](const auto& b) -> std::size_t {
            using T = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<T, ChargeBasis>) {
                return static_cast<std::size_t>(2 * b.n_max + 1);
            } else if constexpr (std::is_same_v<T, BoundedGrid>) {
                return static_cast<std::size_t>(b.n_points);
            } else if constexpr (std::is_same_v<T, PeriodicGrid>) {
                return static_cast<std::size_t>(b.n_points);
            } else {
                return b.theta->dimension() * b.phi->dimension();
            }
        },
        kind);
}

double BasisSpec::weight() const {
    return std::visit(
        [](const auto& b) -> double {
            using T = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<T, ChargeBasis>) {
                return 1.0;
            } else if constexpr (std::is_same_v<T, BoundedGrid>) {
                return 2.0 * b.x_max / (b.n_points + 1);
            } else if constexpr (std::is_same_v<T, PeriodicGrid>) {
                return kTwoPi / b.n_points;
            } else {
                return b.theta->weight() * b.phi->weight();
            }
        },
        kind);
}

std::vector<double> BasisSpec::coordinates() const {
    return std::visit(
        [](const auto& b) -> std::vector<double> {
            using T = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<T, BoundedGrid>) {
                const double h = 2.0 * b.x_max / (b.n_points + 1);
                std::vector<double> x(b.n_points);
                for (int i = 0; i < b.n_points; ++i) x[i] = -b.x_max + h * (i + 1);
                return x;
            } else if constexpr (std::is_same_v<T, PeriodicGrid>) {
                const double h = kTwoPi / b.n_points;
                std::vector<double> x(b.n_points);
                for (int i = 0; i < b.n_points; ++i) x[i] = h * i;
                return x;
            } else {
                throw UnsupportedBasis("coordinates() requires a 1-D grid basis");
            }
        },
        kind);
}

std::string BasisSpec::describe() const {
    std::ostringstream os;
    std::visit(
        [&](const auto& b) {
            using T = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<T, ChargeBasis>) {
                os << "charge(n_max=" << b.n_max << ")";
            } else if constexpr (std::is_same_v<T, BoundedGrid>) {
                os << "bounded(x_max=" << b.x_max << ",n=" << b.n_points << ")";
            } else if constexpr (std::is_same_v<T, PeriodicGrid>) {
                os << "periodic(n=" << b.n_points << ",twist=" << b.twist << ")";
            } else {
                os << "product(theta=" << b.theta->describe()
                   << ",phi=" << b.phi->describe() << ")";
            }
        },
        kind);
    return os.str();
}

bool BasisSpec::same_as(const BasisSpec& other, double tol) const {
    if (kind.index() != other.kind.index()) return false;
    if (const auto* c = std::get_if<ChargeBasis>(&kind)) {
        return c->n_max == std::get<ChargeBasis>(other.kind).n_max;
    }
    if (const auto* g = std::get_if<BoundedGrid>(&kind)) {
        const auto& o = std::get<BoundedGrid>(other.kind);
        return g->n_points == o.n_points && std::abs(g->x_max - o.x_max) <= tol;
    }
    if (const auto* p = std::get_if<PeriodicGrid>(&kind)) {
        const auto& o = std::get<PeriodicGrid>(other.kind);
        return p->n_points == o.n_points && std::abs(p->twist - o.twist) <= tol;
    }
    const auto& a = std::get<ProductBasis>(kind);
    const auto& b = std::get<ProductBasis>(other.kind);
    return a.theta->same_as(*b.theta, tol) && a.phi->same_as(*b.phi, tol);
}

BasisSpec make_charge_basis(int n_max) {
    if (n_max < 1) throw DimensionTooSmall("charge basis requires n_max >= 1");
    return BasisSpec{ChargeBasis{n_max}};
}

BasisSpec make_bounded_grid(double x_max, int n_points) {
    if (x_max <= 0) throw DomainTooSmall("bounded grid requires x_max > 0");
    if (n_points < 3) throw DimensionTooSmall("bounded grid requires n_points >= 3");
    return BasisSpec{BoundedGrid{x_max, n_points}};
}

BasisSpec make_periodic_grid(int n_points, double twist) {
    if (n_points < 3) throw DimensionTooSmall("periodic grid requires n_points >= 3");
    return BasisSpec{PeriodicGrid{n_points, twist}};
}

BasisSpec make_product_basis(BasisSpec theta, BasisSpec phi) {
    ProductBasis p;
    p.theta = std::make_shared<BasisSpec>(std::move(theta));
    p.phi = std::make_shared<BasisSpec>(std::move(phi));
    return BasisSpec{std::move(p)};
}

}  // namespace qubitmech

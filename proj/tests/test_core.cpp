#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qubitmech/basis.hpp"
#include "qubitmech/errors.hpp"
#include "qubitmech/params.hpp"

using namespace qubitmech;

namespace {
constexpr double kPi = 3.14159265358979323846264338328;
}

TEST_CASE("transmon validation canonicalizes n_g and keeps the raw value") {
    TransmonParams p{.e_c = 1, .e_j = 50, .n_g = 1.25, .phi_ext = 0};
    TransmonParams v = validate(p);
    CHECK(v.n_g == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(v.n_g_raw == doctest::Approx(1.25));
    CHECK(v.e_c == 1.0);
    CHECK(v.e_j == 50.0);
}

TEST_CASE("validation is idempotent") {
    TransmonParams v =
        validate(TransmonParams{.e_c = 1, .e_j = 5, .n_g = -0.3, .phi_ext = 7.0});
    TransmonParams vv = validate(v);
    CHECK(vv.n_g == doctest::Approx(v.n_g).epsilon(1e-15));
    CHECK(vv.phi_ext == doctest::Approx(v.phi_ext).epsilon(1e-15));
    CHECK(vv.n_g_raw == doctest::Approx(v.n_g_raw));
    CHECK(vv.phi_ext_raw == doctest::Approx(v.phi_ext_raw));

    ZeroPiParams z = validate(ZeroPiParams{.e_c_phi = 1, .e_c_theta = 1, .e_j = 10,
                                           .e_l = 0.05, .phi_ext = 2 * kPi + 0.1});
    CHECK(z.phi_ext == doctest::Approx(0.1).epsilon(1e-12));
    ZeroPiParams zz = validate(z);
    CHECK(zz.phi_ext == doctest::Approx(z.phi_ext).epsilon(1e-15));
}

TEST_CASE("validation rejects bad energies") {
    CHECK_THROWS_AS(
        validate(FluxoniumParams{.e_c = 1, .e_l = -1, .e_j = 10, .phi_ext = kPi}),
        NonPositiveEnergy);
    CHECK_THROWS_AS(validate(TransmonParams{.e_c = 0, .e_j = 1}), NonPositiveEnergy);
    CHECK_THROWS_AS(validate(TransmonParams{.e_c = 1, .e_j = -2}), NonPositiveEnergy);
    CHECK_THROWS_AS(
        validate(FluxoniumParams{.e_c = 1, .e_l = 1, .e_j = std::nan("")}),
        NonFinite);
    CHECK_THROWS_AS(validate(TransmonParams{
                        .e_c = 1, .e_j = 1, .n_g = std::numeric_limits<double>::infinity()}),
                    NonFinite);
    CHECK_THROWS_AS(validate(ZeroPiParams{.e_c_phi = 1, .e_c_theta = -0.1, .e_j = 1,
                                          .e_l = 1}),
                    NonPositiveEnergy);
}

TEST_CASE("wrap_into reduces into [0, period)") {
    CHECK(wrap_into(1.25, 1.0) == doctest::Approx(0.25));
    CHECK(wrap_into(-0.25, 1.0) == doctest::Approx(0.75));
    CHECK(wrap_into(2 * kPi + 0.1, 2 * kPi) == doctest::Approx(0.1));
    CHECK(wrap_into(0.0, 1.0) == 0.0);
}

TEST_CASE("charge basis dimension and weight") {
    BasisSpec b = make_charge_basis(2);
    CHECK(b.dimension() == 5);
    CHECK(b.weight() == 1.0);
    CHECK_THROWS_AS(b.coordinates(), UnsupportedBasis);
    CHECK_THROWS_AS(make_charge_basis(0), DimensionTooSmall);
}

TEST_CASE("bounded grid excludes Dirichlet endpoints") {
    BasisSpec b = make_bounded_grid(12.0, 800);
    CHECK(b.dimension() == 800);
    const double h = 24.0 / 801.0;
    CHECK(b.weight() == doctest::Approx(h).epsilon(1e-14));
    std::vector<double> x = b.coordinates();
    REQUIRE(x.size() == 800);
    CHECK(x.front() == doctest::Approx(-12.0 + h).epsilon(1e-12));
    CHECK(x.back() == doctest::Approx(12.0 - h).epsilon(1e-12));
    CHECK_THROWS_AS(make_bounded_grid(-1.0, 10), DomainTooSmall);
    CHECK_THROWS_AS(make_bounded_grid(1.0, 2), DimensionTooSmall);
}

TEST_CASE("periodic grid points and twist") {
    BasisSpec b = make_periodic_grid(8, 0.25);
    CHECK(b.dimension() == 8);
    std::vector<double> x = b.coordinates();
    for (int k = 0; k < 8; ++k) {
        CHECK(x[k] == doctest::Approx(2 * kPi * k / 8.0).epsilon(1e-14));
    }
    CHECK(b.weight() == doctest::Approx(2 * kPi / 8.0).epsilon(1e-14));
    CHECK_THROWS_AS(make_periodic_grid(2), DimensionTooSmall);
}

TEST_CASE("product basis dimension, weight, description") {
    BasisSpec p = make_product_basis(make_periodic_grid(96),
                                     make_bounded_grid(10.0, 160));
    CHECK(p.dimension() == 96u * 160u);
    const double w_theta = 2 * kPi / 96.0;
    const double w_phi = 20.0 / 161.0;
    CHECK(p.weight() == doctest::Approx(w_theta * w_phi).epsilon(1e-12));
    CHECK_THROWS_AS(p.coordinates(), UnsupportedBasis);
    CHECK(p.describe().find("x") != std::string::npos);
}

TEST_CASE("same_as distinguishes bases") {
    CHECK(make_charge_basis(3).same_as(make_charge_basis(3)));
    CHECK_FALSE(make_charge_basis(3).same_as(make_charge_basis(4)));
    CHECK_FALSE(make_bounded_grid(12, 800).same_as(make_bounded_grid(12, 801)));
    CHECK(make_periodic_grid(64, 0.5).same_as(make_periodic_grid(64, 0.5)));
    CHECK_FALSE(make_periodic_grid(64, 0.5).same_as(make_periodic_grid(64, 0.25)));
    CHECK_FALSE(make_charge_basis(3).same_as(make_periodic_grid(7)));
}

#include "zitterlab/constants.hpp"

#include <array>
#include <numbers>
#include <utility>

namespace zitterlab {

PhysicalConstants PhysicalConstants::codata2018() {
    PhysicalConstants k{};
    k.e = 1.602176634e-19;
    k.m_e = 9.1093837015e-31;
    k.c = 299792458.0;
    k.hbar = 6.62607015e-34 / (2.0 * std::numbers::pi);
    k.epsilon0 = 8.8541878128e-12;
    k.alpha = 7.2973525693e-3;
    return k;
}

PhysicalConstants PhysicalConstants::natural(double alpha) {
    PhysicalConstants k{};
    k.e = 1.0;
    k.m_e = 1.0;
    k.c = 1.0;
    k.hbar = 1.0;
    k.epsilon0 = 1.0 / (4.0 * std::numbers::pi * alpha);
    k.alpha = alpha;
    return k;
}

double PhysicalConstants::fine_structure() const {
    return e * e / (4.0 * std::numbers::pi * epsilon0 * hbar * c);
}

namespace {

constexpr std::array<std::pair<QuantityKind, std::string_view>, 12> kKindNames{{
    {QuantityKind::dimensionless, "dimensionless"},
    {QuantityKind::energy, "energy"},
    {QuantityKind::length, "length"},
    {QuantityKind::time, "time"},
    {QuantityKind::angular_frequency, "angular_frequency"},
    {QuantityKind::speed, "speed"},
    {QuantityKind::momentum, "momentum"},
    {QuantityKind::mass, "mass"},
    {QuantityKind::magnetic_field, "magnetic_field"},
    {QuantityKind::magnetic_moment, "magnetic_moment"},
    {QuantityKind::current, "current"},
    {QuantityKind::area, "area"},
}};

}  // namespace

QuantityKind parse_quantity_kind(std::string_view name) {
    for (const auto& [kind, text] : kKindNames)
        if (text == name) return kind;
    throw UnknownQuantityKind("unknown quantity kind: " + std::string(name));
}

std::string_view to_string(QuantityKind kind) {
    for (const auto& [k, text] : kKindNames)
        if (k == kind) return text;
    return "?";
}

std::string_view si_unit(QuantityKind kind) {
    switch (kind) {
        case QuantityKind::dimensionless: return "1";
        case QuantityKind::energy: return "J";
        case QuantityKind::length: return "m";
        case QuantityKind::time: return "s";
        case QuantityKind::angular_frequency: return "rad/s";
        case QuantityKind::speed: return "m/s";
        case QuantityKind::momentum: return "kg m/s";
        case QuantityKind::mass: return "kg";
        case QuantityKind::magnetic_field: return "T";
        case QuantityKind::magnetic_moment: return "J/T";
        case QuantityKind::current: return "A";
        case QuantityKind::area: return "m^2";
    }
    return "?";
}

UnitSystem UnitSystem::natural_electron() { return {Mode::natural, PhysicalConstants::codata2018().m_e}; }

double UnitSystem::si_factor(QuantityKind kind, const PhysicalConstants& k) const {
    if (mode == Mode::si) return 1.0;
    const double m = mass_scale;
    const double energy = m * k.c * k.c;
    const double length = k.hbar / (m * k.c);
    switch (kind) {
        case QuantityKind::dimensionless: return 1.0;
        case QuantityKind::energy: return energy;
        case QuantityKind::length: return length;
        case QuantityKind::time: return k.hbar / energy;
        case QuantityKind::angular_frequency: return energy / k.hbar;
        case QuantityKind::speed: return k.c;
        case QuantityKind::momentum: return m * k.c;
        case QuantityKind::mass: return m;
        // Natural units with e = hbar = m = c = 1: field in m^2 c^2 / (e hbar),
        // moment in e hbar / m, current in e m c^2 / hbar.
        case QuantityKind::magnetic_field: return m * m * k.c * k.c / (k.e * k.hbar);
        case QuantityKind::magnetic_moment: return k.e * k.hbar / m;
        case QuantityKind::current: return k.e * energy / k.hbar;
        case QuantityKind::area: return length * length;
    }
    throw UnknownQuantityKind("unknown quantity kind");
}

UnitSystem parse_unit_system(std::string_view name) {
    if (name == "natural") return UnitSystem::natural_electron();
    if (name == "si" || name == "SI") return UnitSystem::si();
    throw std::invalid_argument("unknown unit system: " + std::string(name) + " (expected natural|si)");
}

double convert(double value, QuantityKind kind, const UnitSystem& from, const UnitSystem& to,
               const PhysicalConstants& k) {
    if (from.mode == to.mode && from.mass_scale == to.mass_scale) return value;
    return value * from.si_factor(kind, k) / to.si_factor(kind, k);
}

nlohmann::json constants_to_json(const PhysicalConstants& k) {
    return nlohmann::json{
        {"source", "CODATA 2018"},
        {"e", {{"value", k.e}, {"unit", "C"}}},
        {"m_e", {{"value", k.m_e}, {"unit", "kg"}}},
        {"c", {{"value", k.c}, {"unit", "m/s"}}},
        {"hbar", {{"value", k.hbar}, {"unit", "J s"}}},
        {"epsilon0", {{"value", k.epsilon0}, {"unit", "F/m"}}},
        {"alpha", {{"value", k.alpha}, {"unit", "1"}}},
    };
}

}  // namespace zitterlab

#pragma once

// Physical constants (CODATA 2018) and natural-unit <-> SI conversion.

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

namespace zitterlab {

struct PhysicalConstants {
    double e;         // C
    double m_e;       // kg
    double c;         // m/s
    double hbar;      // J s
    double epsilon0;  // F/m
    double alpha;     // dimensionless, published value

    /// CODATA 2018 recommended values.
    static PhysicalConstants codata2018();
    /// e = m = c = hbar = 1, epsilon0 = 1/(4 pi alpha) so that alpha keeps its
    /// physical value.
    static PhysicalConstants natural(double alpha = codata2018().alpha);

    /// e^2 / (4 pi epsilon0 hbar c) recomputed from the stored constants.
    double fine_structure() const;
    double rest_energy() const { return m_e * c * c; }
    double bohr_magneton() const { return e * hbar / (2.0 * m_e); }
    double compton_length() const { return hbar / (m_e * c); }  // reduced, hbar/mc
};

enum class QuantityKind {
    dimensionless,
    energy,
    length,
    time,
    angular_frequency,
    speed,
    momentum,
    mass,
    magnetic_field,
    magnetic_moment,
    current,
    area,
};

class UnknownQuantityKind : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

QuantityKind parse_quantity_kind(std::string_view name);
std::string_view to_string(QuantityKind kind);
/// SI unit symbol for a quantity kind.
std::string_view si_unit(QuantityKind kind);

struct UnitSystem {
    enum class Mode { natural, si };

    Mode mode = Mode::natural;
    /// Mass scale of the natural system (kg); ignored for SI.
    double mass_scale = 0.0;

    static UnitSystem natural_electron();
    static UnitSystem si() { return {Mode::si, 0.0}; }

    /// SI value of one natural unit of the given kind (1 for SI mode).
    double si_factor(QuantityKind kind, const PhysicalConstants& k = PhysicalConstants::codata2018()) const;
};

UnitSystem parse_unit_system(std::string_view name);

double convert(double value, QuantityKind kind, const UnitSystem& from, const UnitSystem& to,
               const PhysicalConstants& k = PhysicalConstants::codata2018());

nlohmann::json constants_to_json(const PhysicalConstants& k);

}  // namespace zitterlab

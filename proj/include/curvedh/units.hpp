#pragma once

// Unit system. All internal lengths are measured in Bohr radii; energies are
// expressed through the Rydberg B of the chosen system, so that E = B a1^2 lambda
// (hbar^2 / 2m = B a1^2).

namespace curvedh {

struct UnitScales {
    double bohr_radius = 1.0;  // a1, internal length unit
    double rydberg = 0.5;      // B = m e^4 / 2 hbar^2, in output energy units

    // Reference constants for SI / eV conversions.
    double bohr_radius_m = 5.29177210903e-11;
    double rydberg_ev = 13.605693;
    double planck_length_m = 1.616255e-35;

    /// Hartree atomic units: a1 = 1, B = 1/2, beta = 2, lambda = 2E.
    static constexpr UnitScales atomic() { return UnitScales{}; }

    /// Lengths still in Bohr radii, energies in electron volts.
    static constexpr UnitScales electron_volt()
    {
        UnitScales u;
        u.rydberg = u.rydberg_ev;
        return u;
    }

    /// beta = 2 m e^2 / hbar^2 = 2 / a1.
    constexpr double beta() const { return 2.0 / bohr_radius; }

    constexpr double energy_from_lambda(double lambda) const
    {
        return lambda * rydberg * bohr_radius * bohr_radius;
    }

    constexpr double lambda_from_energy(double energy) const
    {
        return energy / (rydberg * bohr_radius * bohr_radius);
    }

    /// Multiplier taking an energy in these units to electron volts.
    constexpr double energy_to_ev() const { return rydberg_ev / rydberg; }

    constexpr double length_to_m() const { return bohr_radius_m / bohr_radius; }

    /// Planck length in internal length units.
    constexpr double planck_length() const { return planck_length_m / length_to_m(); }
};

} // namespace curvedh

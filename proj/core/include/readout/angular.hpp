#pragma once

namespace readout::angular {

// Clebsch-Gordan coefficient <j1 m1; j2 m2 | j m> via the Racah formula.
// Arguments are angular momenta (integer or half-integer).
double clebsch_gordan(double j1, double m1, double j2, double m2, double j, double m);

double wigner_3j(double j1, double j2, double j3, double m1, double m2, double m3);

// {j1 j2 j3; j4 j5 j6}
double wigner_6j(double j1, double j2, double j3, double j4, double j5, double j6);

}  // namespace readout::angular

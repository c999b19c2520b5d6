"""Circuit model: parameters, unit reduction, Bose factor and response denominator."""

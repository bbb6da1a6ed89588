#pragma once

// Plain-text Hamiltonian descriptions. A file holds exactly one of
//   {"family": "<name>", "params": { ... }}
//   {"pauli": [[ ... 4 rows of 4 reals ... ]]}
// Unknown keys and non-finite numbers are rejected everywhere, so a typo
// cannot silently fall back to a default.

#include <string>

#include "qtherm/hamiltonian.hpp"

namespace qtherm {

// Parse to a FamilySpec; an explicit "pauli" tensor yields Family::explicit_
// with the coefficients attached. Callers that re-parameterize a family
// (the grid command scans its field) use this form.
FamilySpec parse_family_spec(const std::string& text);

// parse_family_spec followed by hamiltonians' build(); family parameter
// checking happens there.
PauliHamiltonian parse_spec(const std::string& text);

// Serialize as an explicit Pauli tensor with round-trip number precision:
// parse_spec(serialize_spec(h)) reproduces h bit-for-bit.
std::string serialize_spec(const PauliHamiltonian& h);

}  // namespace qtherm

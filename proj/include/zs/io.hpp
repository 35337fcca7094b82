#pragma once

#include "zs/actions.hpp"
#include "zs/flows.hpp"
#include "zs/psi.hpp"
#include "zs/spectra.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>

namespace zs {

using Json = nlohmann::ordered_json;

// {"coeffs1": [[k, re, im], ...], "coeffs2": [...]}; throws ParseError.
Potential potential_from_json(const Json& j);
Potential read_potential(const std::string& path);
Json to_json(const Potential& phi);

// Complex values are [re, im]; indexed arrays run over n = -N..N.
Json to_json(const SpectrumRecord& s);
Json to_json(const BirkhoffCoordinates& b);
Json to_json(const SigmaSequence& q);
Json to_json(const FlowTrajectory& t);

// Serialization with every double printed to 17 significant digits.
std::string dump(const Json& j, int indent = 2);
std::string format_number(double x);

void write_csv(std::ostream& os, const SpectrumRecord& s);
void write_csv(std::ostream& os, const BirkhoffCoordinates& b);
void write_csv(std::ostream& os, const SigmaSequence& q);
void write_csv(std::ostream& os, const FlowTrajectory& t);

}  // namespace zs

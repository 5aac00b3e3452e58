#ifndef SPARSECARD_INSTANCE_IO_HPP
#define SPARSECARD_INSTANCE_IO_HPP

#include <iosfwd>
#include <string>

#include "sparsecard/dsfm.hpp"

namespace sparsecard {

// Text instance format. '#' starts a comment line. First data line is
// "n R"; then R lines "<penalty-spec> <k> v1 ... vk" with 1-indexed node ids.
// Penalty spec grammar:
//   dlin(<delta>) | clique | sqrt | pow(<p>) | vals(g0,...,gk) | symvals(h0,...,hr)
// Parse failures name the line and column.
DSFMInstance parse_instance(std::istream& in);
void write_instance(const DSFMInstance& inst, std::ostream& out);

PenaltySpec parse_penalty_spec(const std::string& text);
std::string format_penalty_spec(const PenaltySpec& p);

}  // namespace sparsecard

#endif

#ifndef DALG_SERIES_IO_HPP
#define DALG_SERIES_IO_HPP

#include <iosfwd>
#include <string>

#include "dalg/series.hpp"

namespace dalg {

// Series file format, one coefficient per line:
//
//   #modulus 0          (0 for exact coefficients, else the value p^r)
//   #order N
//   #name my_series     (optional)
//   c0
//   c1
//   ...
//
// Exact rational coefficients are written num/den; exact integers have no
// slash.  Modular coefficients are canonical residues in [0, p^r).

AnySeries read_series(std::istream& in);
AnySeries read_series_file(const std::string& path);

void write_series(std::ostream& out, const AnySeries& s);
void write_series_file(const std::string& path, const AnySeries& s);

} // namespace dalg

#endif

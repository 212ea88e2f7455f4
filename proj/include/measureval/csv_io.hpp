#ifndef MEASUREVAL_CSV_IO_HPP
#define MEASUREVAL_CSV_IO_HPP

#include <string>

#include "measureval/descriptive.hpp"

namespace measureval {

/// Reads a one-column measurement file: one value per line, '.' decimal
/// separator, '#' comment lines and blank lines ignored. Errors carry the
/// file name and line number.
MeasurementRun read_measurement_file(const std::string& path);

}  // namespace measureval

#endif

#pragma once

#include <string>

#include "rulelist/dataset.hpp"

namespace rulelist {

// Converts the raw ProPublica two-year recidivism CSV into a categorical table:
// 6 attributes (sex; age binned 18-20/21-22/23-25/26-45/>45; juvenile felonies,
// misdemeanors, and total crimes binned 0/>0; priors binned 0/1/2-3/>3) plus the
// binary two_year_recid label. Rows with a missing used cell or age outside 18-96
// are dropped and counted.
CategoricalTable prep_compas(const std::string& raw_csv_path);

// Converts a raw NYPD stop-and-frisk CSV (2014 schema) into a categorical table for
// weapon prediction: keeps records where the individual was frisked and/or searched
// and age is within 12-89; the label is whether any weapon column is set. The nine
// stop-reason and nine additional-circumstance flags become two-valued attributes
// (yes/no) so that their "no" values provide the negated antecedents; city, location,
// and inside/outside stay single-valued.
CategoricalTable prep_nyclu(const std::string& raw_csv_path);

} // namespace rulelist

#pragma once

// Convenience include for the whole library.

#include "bibliorank/csv.hpp"
#include "bibliorank/errors.hpp"
#include "bibliorank/graph.hpp"
#include "bibliorank/graph_io.hpp"
#include "bibliorank/indicators.hpp"
#include "bibliorank/ingest.hpp"
#include "bibliorank/kmeans.hpp"
#include "bibliorank/manifest.hpp"
#include "bibliorank/mcdm.hpp"
#include "bibliorank/record.hpp"
#include "bibliorank/sha256.hpp"
#include "bibliorank/text.hpp"
#include "bibliorank/textmine.hpp"
#include "bibliorank/version.hpp"

// Copyright (C) 2026 facekit authors
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include "facekit/error.hpp"
#include "facekit/io.hpp"

#include "facekit/imaging/annotate.hpp"
#include "facekit/imaging/image.hpp"
#include "facekit/imaging/integral_image.hpp"
#include "facekit/imaging/netpbm.hpp"

#include "facekit/cascade/cascade_model.hpp"

#include "facekit/detector/detect.hpp"
#include "facekit/detector/grouping.hpp"
#include "facekit/detector/window.hpp"

#include "facekit/encoder/dct.hpp"
#include "facekit/encoder/encoder.hpp"
#include "facekit/encoder/encoding.hpp"

#include "facekit/gallery/gallery.hpp"
#include "facekit/gallery/gallery_io.hpp"

#include "facekit/evaluation/json_io.hpp"
#include "facekit/evaluation/matching.hpp"
#include "facekit/evaluation/reports.hpp"

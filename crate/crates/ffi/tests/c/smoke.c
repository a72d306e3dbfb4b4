#include <math.h>
#include <stdio.h>
#include <string.h>

#include "wgm_plasmon.h"

#define CHECK(cond)                                                    \
    do {                                                               \
        if (!(cond)) {                                                 \
            fprintf(stderr, "check failed at line %d: %s\n", __LINE__, #cond); \
            return 1;                                                  \
        }                                                              \
    } while (0)

int main(void) {
    WgmScenario *s = NULL;
    CHECK(wgm_scenario_default(&s) == WGM_STATUS_OK);

    WgmRates r;
    CHECK(wgm_scenario_derive(s, &r) == WGM_STATUS_OK);
    CHECK(fabs(r.g_cm / (2 * M_PI * 1e9) - 9.08) < 0.01);

    double t0 = 0;
    CHECK(wgm_transmission(s, false, false, 0.0, &t0) == WGM_STATUS_OK);
    CHECK(fabs(t0 - 4.0 / 9.0) < 1e-9);

    CHECK(wgm_scenario_set(s, "geometry.r_m", "80nm") == WGM_STATUS_CONFIG);
    CHECK(strstr(wgm_last_error_message(), "geometry.r_m") != NULL);

    WgmSpectrum *sp = NULL;
    CHECK(wgm_spectrum_compute(s, true, true, 2001, &sp) == WGM_STATUS_OK);
    CHECK(wgm_spectrum_len(sp) == 2001);
    CHECK(wgm_spectrum_dip_count(sp) == 3);
    WgmDip first;
    CHECK(wgm_spectrum_dip(sp, 0, &first) == WGM_STATUS_OK);
    CHECK(first.delta < 0);
    wgm_spectrum_free(sp);

    char digest[80];
    size_t needed = 0;
    CHECK(wgm_scenario_digest(s, digest, sizeof digest, &needed) == WGM_STATUS_OK);
    CHECK(strncmp(digest, "sha256:", 7) == 0 && needed == strlen(digest) + 1);

    wgm_scenario_free(s);
    printf("ok %s\n", wgm_version());
    return 0;
}

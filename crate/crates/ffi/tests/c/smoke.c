#include <stdio.h>
#include <string.h>

#include "sieu.h"

int main(void) {
    SieuEngine *engine = NULL;
    if (sieu_engine_new(NULL, &engine) != SIEU_STATUS_OK) {
        fprintf(stderr, "new: %s\n", sieu_last_error_message());
        return 1;
    }
    char *json = NULL;
    SieuStatus st = sieu_engine_search(engine, "list the teaching staff in anna university", 10, &json);
    if (st != SIEU_STATUS_OK || strstr(json, "\"results\"") == NULL) {
        fprintf(stderr, "search: %d\n", (int)st);
        return 1;
    }
    sieu_string_free(json);
    if (sieu_engine_search(engine, "  ", 0, &json) != SIEU_STATUS_EMPTY_QUERY || sieu_last_error_message() == NULL) {
        return 1;
    }
    sieu_engine_free(engine);
    printf("ok %s\n", sieu_version());
    return 0;
}

# utils package initialization file

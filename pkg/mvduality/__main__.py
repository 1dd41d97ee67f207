from mvduality.main import main

main()
